#include "doctest.h"
#include "tritherm/trimap.hpp"

using namespace tritherm;

namespace {
RationalPair as_rational(const PairRepr& p) {
  auto resolved = p.resolve();
  REQUIRE(std::holds_alternative<RationalPair>(resolved));
  return std::get<RationalPair>(resolved);
}
}  // namespace

TEST_CASE("sector index on exact pairs") {
  CHECK(sector_index(PairRepr::from_rational(Rat(3, 4), Rat(1, 2))) == 0);
  CHECK(sector_index(PairRepr::from_rational(Rat(1, 2), Rat(1, 3))) == 1);
  CHECK(sector_index(PairRepr::from_rational(Rat(1, 2), Rat(1, 2))) == 1);
  // 1 - alpha - (k+1) beta = 0 belongs to the higher sector
  CHECK(sector_index(PairRepr::from_rational(Rat(1, 2), Rat(1, 4))) == 2);
}

TEST_CASE("one application of the map") {
  RationalPair t = as_rational(apply_T(PairRepr::from_rational(Rat(3, 4), Rat(1, 2))));
  CHECK(t.alpha == Rat(2, 3));
  CHECK(t.beta == Rat(1, 3));
  RationalPair u = as_rational(apply_T(PairRepr::from_rational(Rat(1, 2), Rat(1, 3))));
  CHECK(u.alpha == Rat(2, 3));
  CHECK(u.beta == Rat(1, 3));
}

TEST_CASE("out-of-domain pairs are refused") {
  CHECK_THROWS_AS(sector_index(PairRepr::from_rational(Rat(2), Rat(1))), OutOfDomain);
  CHECK_THROWS_AS(triangle_sequence(PairRepr::from_rational(Rat(1, 3), Rat(1, 2)), 5),
                  OutOfDomain);
  CHECK_THROWS_AS(triangle_sequence(PairRepr::from_rational(Rat(1, 2), Rat(-1, 3)), 5),
                  OutOfDomain);
}

TEST_CASE("terminating rational orbits") {
  DigitSequence a = triangle_sequence(PairRepr::from_rational(Rat(3, 4), Rat(1, 2)), 10);
  CHECK(a == make_digits({0, 1}, true));
  DigitSequence b = triangle_sequence(PairRepr::from_rational(Rat(1, 2), Rat(1, 3)), 10);
  CHECK(b == make_digits({1, 1}, true));
  // boundary pair: 1 - alpha - 2 beta = 0, single digit then beta = 0
  DigitSequence c = triangle_sequence(PairRepr::from_rational(Rat(1, 2), Rat(1, 4)), 10);
  CHECK(c == make_digits({2}, true));
}

TEST_CASE("requested depth truncates without a terminated flag") {
  DigitSequence d = triangle_sequence(PairRepr::from_rational(Rat(3, 4), Rat(1, 2)), 1);
  CHECK(d == make_digits({0}, false));
}

TEST_CASE("orbit stops after the beta = 0 point") {
  std::vector<PairRepr> o = orbit(PairRepr::from_rational(Rat(3, 4), Rat(1, 2)), 10);
  REQUIRE(o.size() == 3);
  RationalPair last = as_rational(o.back());
  CHECK(last.alpha == Rat(1, 2));
  CHECK(last.beta == Rat(0));
}

TEST_CASE("the cubic point is a fixed point with zero digits") {
  PairRepr q = cubic_fixed_point(512);
  DigitSequence ds = triangle_sequence(q, 12);
  CHECK(ds.size() == 12);
  CHECK_FALSE(ds.terminated);
  for (long i = 0; i < ds.size(); ++i) CHECK(ds[i] == 0);
}

TEST_CASE("interval pairs certify digits near the cubic point") {
  PairRepr blurred =
      PairRepr::from_decimal(Rat(6823278, 10000000), Rat(4655712, 10000000), 20, 256);
  DigitSequence ds = triangle_sequence(blurred, 3);
  CHECK(ds == make_digits({0, 0, 0}, false));
}
