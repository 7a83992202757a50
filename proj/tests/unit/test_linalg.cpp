#include "doctest.h"
#include "tritherm/linalg.hpp"

using namespace tritherm;

TEST_CASE("generators have the pinned rows and unit determinant") {
  const IntMat3& a0 = generator(0);
  CHECK(a0.row(0) == IntVec3(Int(0), Int(0), Int(1)));
  CHECK(a0.row(1) == IntVec3(Int(1), Int(0), Int(-1)));
  CHECK(a0.row(2) == IntVec3(Int(0), Int(1), Int(0)));
  const IntMat3& a1 = generator(1);
  CHECK(a1.row(0) == IntVec3(Int(1), Int(0), Int(0)));
  CHECK(a1.row(1) == IntVec3(Int(0), Int(1), Int(0)));
  CHECK(a1.row(2) == IntVec3(Int(-1), Int(0), Int(1)));
  CHECK(a0.det() == 1);
  CHECK(a1.det() == 1);
}

TEST_CASE("word_product multiplies left to right") {
  CHECK(word_product({}) == IntMat3::identity());
  CHECK(word_product({1}) == generator(1));
  CHECK(word_product({0}) == generator(0));
  CHECK(word_product({1, 0}) == generator(1) * generator(0));
  CHECK(word_product({0, 1, 1}) == generator(0) * generator(1) * generator(1));
}

TEST_CASE("hs_product reads the third column") {
  Rat alpha(1, 2), beta(1, 3);
  CHECK(hs_product(alpha, beta, IntMat3::identity()) == beta);
  CHECK(hs_product(alpha, beta, generator(1)) == beta);            // word "1"
  CHECK(hs_product(alpha, beta, generator(0)) == 1 - alpha);       // word "0"
  CHECK(hs_product(alpha, beta, word_product({1, 0})) == 1 - alpha - beta);
  CHECK(hs_product(alpha, beta, word_product({0, 0})) == alpha - beta);
  constexpr mpfr_prec_t prec = 128;
  Interval ia = Interval::of_rat(alpha, prec);
  Interval ib = Interval::of_rat(beta, prec);
  Interval enc = hs_product(ia, ib, word_product({1, 0}));
  Rat exact = 1 - alpha - beta;
  CHECK(mpfr_cmp_q(enc.lo().raw(), exact.get_mpq_t()) <= 0);
  CHECK(mpfr_cmp_q(enc.hi().raw(), exact.get_mpq_t()) >= 0);
}

TEST_CASE("hat projects and rejects zero leads") {
  RationalPoint2 p = hat(IntVec3(Int(2), Int(1), Int(1)));
  CHECK(p.u == Rat(1, 2));
  CHECK(p.v == Rat(1, 2));
  RationalPoint2 q = hat(IntVec3(Int(-3), Int(6), Int(1)));
  CHECK(q.u == Rat(-2));
  CHECK(q.v == Rat(-1, 3));
  CHECK_THROWS_AS(hat(IntVec3(Int(0), Int(1), Int(1))), ZeroLeadCoordinate);
}

TEST_CASE("farey_sum is the hat of the vector sum") {
  IntVec3 a(Int(1), Int(0), Int(0));
  IntVec3 b(Int(1), Int(1), Int(0));
  IntVec3 c(Int(1), Int(1), Int(1));
  RationalPoint2 p = farey_sum({a, b, c});
  CHECK(p.u == Rat(2, 3));
  CHECK(p.v == Rat(1, 3));
  RationalPoint2 two = farey_sum({a, c});
  CHECK(two.u == Rat(1, 2));
  CHECK(two.v == Rat(1, 2));
}

TEST_CASE("cross product and matrix helpers") {
  CHECK(cross(IntVec3(Int(1), Int(0), Int(0)), IntVec3(Int(0), Int(1), Int(0))) ==
        IntVec3(Int(0), Int(0), Int(1)));
  IntVec3 u(Int(2), Int(3), Int(5)), v(Int(7), Int(11), Int(13));
  IntVec3 w = cross(u, v);
  // orthogonality to both arguments
  CHECK(u.x * w.x + u.y * w.y + u.z * w.z == 0);
  CHECK(v.x * w.x + v.y * w.y + v.z * w.z == 0);
  IntMat3 m = IntMat3::from_columns(u, v, w);
  CHECK(m.column(0) == u);
  CHECK(m.column(1) == v);
  CHECK(IntMat3::from_rows(u, v, w).row(2) == w);
}

TEST_CASE("projective triangle area matches the hand value") {
  IntMat3 cols = IntMat3::from_columns(IntVec3(Int(1), Int(0), Int(0)),
                                       IntVec3(Int(1), Int(1), Int(0)),
                                       IntVec3(Int(1), Int(0), Int(1)));
  CHECK(projective_triangle_area(cols) == Rat(1));
}
