#include "doctest.h"
#include "tritherm/construct.hpp"
#include "tritherm/trimap.hpp"

using namespace tritherm;

TEST_CASE("enclosure area of the first cells") {
  CHECK(enclosure_area(make_digits({0})) == Rat(1, 2));
  CHECK(enclosure_area(make_digits({0, 0})) < Rat(1, 2));
}

TEST_CASE("pair_from_digits round-trips its digit prefix") {
  DigitSequence ds = make_digits({0, 0, 0});
  Enclosure e = pair_from_digits(ds);
  CHECK(e.depth == 3);
  CHECK(triangle_contains(e.vertices, e.representative));
  PairRepr rep = PairRepr::from_rational(e.representative.u, e.representative.v);
  CHECK(triangle_sequence(rep, 3) == make_digits({0, 0, 0}, false));
  DigitSequence big = make_digits({4, 0, 2, 1});
  Enclosure f = pair_from_digits(big);
  PairRepr rep2 = PairRepr::from_rational(f.representative.u, f.representative.v);
  CHECK(triangle_sequence(rep2, 4) == make_digits({4, 0, 2, 1}, false));
}

TEST_CASE("refinement nests strictly") {
  Enclosure e = pair_from_digits(make_digits({1, 2}));
  Enclosure r = refine(e, make_digits({0, 3}));
  CHECK(r.depth == 4);
  CHECK(enclosure_area(r.digits) < enclosure_area(e.digits));
  CHECK(triangle_contains(e.vertices, r.representative));
  CHECK(triangle_contains(e.vertices, r.vertices.v0));
  CHECK(triangle_contains(e.vertices, r.vertices.v1));
  CHECK(triangle_contains(e.vertices, r.vertices.v2));
}

TEST_CASE("membership test is exact on boundaries") {
  NestedTriangle t = nested_triangle(make_digits({0}));
  // vertices and edge midpoints are inside the closed triangle
  CHECK(triangle_contains(t, t.v0));
  CHECK(triangle_contains(t, {Rat(3, 4), Rat(1, 4)}));  // midpoint v0-v2
  CHECK(triangle_contains(t, {Rat(3, 4), Rat(1, 2)}));
  CHECK_FALSE(triangle_contains(t, {Rat(1, 4), Rat(1, 4)}));
  CHECK_FALSE(triangle_contains(t, {Rat(0), Rat(0)}));
}

TEST_CASE("growth presets behave as configured") {
  Theorem1Config cfg;  // linear
  Interval f5 = theorem1_f(cfg, 5, 128);
  CHECK(mpfr_cmp_ui(f5.lo().raw(), 5) == 0);
  CHECK(mpfr_cmp_ui(f5.hi().raw(), 5) == 0);
  CHECK(theorem1_hypothesis_ok(cfg));
  Theorem1Config lg;
  lg.f = Theorem1Config::Growth::Log;
  Interval l2 = theorem1_f(lg, 2, 128);
  Interval l9 = theorem1_f(lg, 9, 128);
  CHECK(l2.less_than(l9) == true);
  CHECK(theorem1_hypothesis_ok(lg));
  Theorem1Config ct;
  ct.f = Theorem1Config::Growth::Const;
  ct.f_const = Rat(7, 2);
  Interval c3 = theorem1_f(ct, 3, 128);
  CHECK(mpfr_cmp_q(c3.lo().raw(), Rat(7, 2).get_mpq_t()) == 0);
  CHECK_FALSE(theorem1_hypothesis_ok(ct));
}

TEST_CASE("scheduled digits match the hand-computed start") {
  Theorem1Config cfg;  // k = 1, linear, a1 = 3, m_max = 2
  Theorem1Digits d = theorem1_digits(cfg);
  CHECK_FALSE(d.overflowed);
  CHECK(d.levels_achieved == 2);
  REQUIRE(d.digits.size() == 3);
  CHECK(d.digits[0] == 3);
  // a_2 = floor(e^(2 * 4)) + 1 = floor(2980.958) + 1
  CHECK(d.digits[1] == 2981);
  // a_3 = floor(e^(3 * 2986)) + 1 occupies 12924 bits
  CHECK(mpz_sizeinbase(d.digits[2].get_mpz_t(), 2) == 12924);
  REQUIRE(d.n_values.size() == 3);
  CHECK(d.n_values[0] == 4);
  CHECK(d.n_values[1] == 2986);
  CHECK(d.n_values[2] == Int(2986) + d.digits[2] + 1);
}

TEST_CASE("digit schedule stops at the bit budget") {
  Theorem1Config cfg;
  cfg.bit_budget = 1000;  // a_3 needs 12924 bits
  Theorem1Digits d = theorem1_digits(cfg);
  CHECK(d.overflowed);
  CHECK(d.levels_achieved == 1);
  CHECK(d.digits.size() == 2);
  CHECK(d.next_digit_bits >= 12000);
}
