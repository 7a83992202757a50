#include <vector>

#include "doctest.h"
#include "tritherm/linalg.hpp"
#include "tritherm/partition.hpp"

using namespace tritherm;

namespace {
constexpr mpfr_prec_t kPrec = 256;
}

TEST_CASE("block bits depend on N alone") {
  CHECK(partition_block_bits(1) == 0);
  CHECK(partition_block_bits(6) == 0);
  CHECK(partition_block_bits(7) == 1);
  CHECK(partition_block_bits(10) == 4);
  CHECK(partition_block_bits(14) == 8);
  CHECK(partition_block_bits(22) == 8);
  CHECK(partition_block_bits(28) == 8);
}

TEST_CASE("term chain hits exact powers") {
  CHECK(mpfr_cmp_ui(term_value(Rat(1, 2), Rat(3), kPrec).raw(), 8) == 0);
  CHECK(mpfr_cmp_ui(term_value(Rat(-1, 2), Rat(3), kPrec).raw(), 8) == 0);
  // non-integer s on a dyadic denominator: (1/4)^(-5/2) = 32
  CHECK(mpfr_cmp_ui(term_value(Rat(1, 4), Rat(5, 2), kPrec).raw(), 32) == 0);
}

TEST_CASE("small partition sums are exact integers for 1/2, 1/3") {
  PairRepr pair = PairRepr::from_rational(Rat(1, 2), Rat(1, 3));
  PartitionResult z1 = z_value(pair, 1, Rat(2), kPrec);
  CHECK(mpfr_cmp_ui(z1.value.raw(), 13) == 0);  // 9 + 4
  CHECK_FALSE(z1.pole);
  CHECK_FALSE(z1.value_enc.has_value());
  CHECK(z1.precision_bits == kPrec);
  PartitionResult z2 = z_value(pair, 2, Rat(2), kPrec);
  CHECK(mpfr_cmp_ui(z2.value.raw(), 85) == 0);  // 9 + 36 + 4 + 36
  CHECK(z2.pole_count == 0);
  // min denominator 1/6 exactly (dyadic-free but small enough to be exact at 256)
  CHECK(mpfr_cmp_q(z2.min_denom.raw(), Rat(1, 6).get_mpq_t()) <= 0);
}

TEST_CASE("pole bookkeeping at 1/2, 1/2") {
  PartitionResult r = z_value(PairRepr::from_rational(Rat(1, 2), Rat(1, 2)), 2, Rat(2), kPrec);
  CHECK(r.pole);
  CHECK(r.pole_word == "10");
  CHECK(r.pole_count == 2);
  CHECK(mpfr_cmp_ui(r.value.raw(), 8) == 0);  // the two surviving 1/2 denominators
  CHECK(mpfr_zero_p(r.min_denom.raw()));
}

TEST_CASE("engine equals the flat matrix-product sum at one small case") {
  RationalPair p{Rat(4, 7), Rat(2, 7)};
  long N = 5;
  Rat s(3);
  Real acc(kPrec);
  for (unsigned long i = 0; i < (1ul << N); ++i) {
    std::vector<int> word(static_cast<size_t>(N));
    for (long j = 1; j <= N; ++j)
      word[static_cast<size_t>(j - 1)] = 1 - static_cast<int>((i >> (N - j)) & 1ul);
    Rat den = hs_product(p.alpha, p.beta, word_product(word));
    if (sgn_of(den) == Sgn::Zero) continue;
    Real t = term_value(den, s, kPrec);
    mpfr_add(acc.raw(), acc.raw(), t.raw(), MPFR_RNDN);
  }
  PartitionResult r = z_value(PairRepr::from_rational(p.alpha, p.beta), N, s, kPrec);
  CHECK(mpfr_equal_p(acc.raw(), r.value.raw()));
}

TEST_CASE("invalid arguments are refused") {
  PairRepr pair = PairRepr::from_rational(Rat(1, 2), Rat(1, 3));
  CHECK_THROWS_AS(z_value(pair, 0, Rat(2), kPrec), OutOfDomain);
  CHECK_THROWS_AS(z_value(pair, 2, Rat(0), kPrec), OutOfDomain);
  CHECK_THROWS_AS(z_value(pair, 2, Rat(-1), kPrec), OutOfDomain);
}

TEST_CASE("tiny denominators trigger one precision doubling") {
  Rat tiny(Int(1), Int(1) << 200);
  PairRepr pair = PairRepr::from_rational(Rat(2, 3) - tiny, Rat(1, 3));
  PartitionResult r = z_value(pair, 2, Rat(2), 128);
  CHECK_FALSE(r.pole);
  CHECK(r.precision_bits == 256);
  CHECK(mpfr_cmp_ui_2exp(r.min_denom.raw(), 1, -199) < 0);
  CHECK(mpfr_cmp_ui_2exp(r.value.raw(), 1, 399) > 0);
}

TEST_CASE("inexact pairs get certified enclosures") {
  PartitionResult r = z_value(cubic_fixed_point(kPrec), 4, Rat(3), kPrec);
  REQUIRE(r.value_enc.has_value());
  CHECK_FALSE(r.pole);
  CHECK(r.value_enc->sign() == Sgn::Pos);
  // the scalar value is the midpoint and lies inside the enclosure
  CHECK(mpfr_cmp(r.value_enc->lo().raw(), r.value.raw()) <= 0);
  CHECK(mpfr_cmp(r.value.raw(), r.value_enc->hi().raw()) <= 0);
}

TEST_CASE("worker count does not change a bit") {
  PairRepr pair = PairRepr::from_rational(Rat(3, 7), Rat(2, 9));
  PartitionResult one = z_value(pair, 8, Rat(3), kPrec, 1);
  PartitionResult two = z_value(pair, 8, Rat(3), kPrec, 2);
  PartitionResult eight = z_value(pair, 8, Rat(3), kPrec, 8);
  CHECK(mpfr_equal_p(one.value.raw(), two.value.raw()));
  CHECK(mpfr_equal_p(one.value.raw(), eight.value.raw()));
  CHECK(mpfr_equal_p(one.min_denom.raw(), eight.min_denom.raw()));
}

TEST_CASE("free energy trace over a short range") {
  PairRepr pair = PairRepr::from_rational(Rat(1, 2), Rat(1, 3));
  FreeEnergyTrace tr = free_energy_trace(pair, 1, 4, Rat(2), Rat(1), kPrec);
  REQUIRE(tr.entries.size() == 4);
  CHECK(tr.entries[0].z.N == 1);
  CHECK(tr.entries[3].z.N == 4);
  CHECK(mpfr_cmp_ui(tr.entries[0].z.value.raw(), 13) == 0);
  CHECK(mpfr_cmp_ui(tr.entries[1].z.value.raw(), 85) == 0);
  // the word (1, 0, 1, 0) has denominator d_1 = 0 for this terminating pair
  CHECK(tr.entries[3].z.pole);
  CHECK(tr.entries[3].z.pole_word == "1010");
  // normalized log Z_1 / (s N^k) = log(13) / 2 = 1.2824...
  double n0 = tr.entries[0].normalized.to_double();
  CHECK(n0 == doctest::Approx(1.28247467).epsilon(1e-6));
  FreeEnergyTrace classic = free_energy_trace(pair, 1, 1, Rat(2), Rat(1), kPrec, 0, true);
  CHECK(classic.classic);
  CHECK(classic.entries[0].normalized.to_double() == doctest::Approx(2.56494936).epsilon(1e-6));
}

TEST_CASE("distinguished term singles out the scheduled word") {
  PairRepr pair = PairRepr::from_rational(Rat(1, 2), Rat(1, 3));
  DigitSequence ds = make_digits({1, 1}, true);
  // m = 1: d_0 = 1/6, s = 2 -> 36
  Real t = distinguished_term(pair, ds, 1, Rat(2), kPrec);
  CHECK(mpfr_cmp_ui(t.raw(), 36) == 0);
  // m = 2: d_1 = 0, the word is a pole
  CHECK_THROWS_AS(distinguished_term(pair, ds, 2, Rat(2), kPrec), PoleError);
  CHECK_THROWS_AS(distinguished_term(pair, ds, 3, Rat(2), kPrec), OutOfDomain);
}
