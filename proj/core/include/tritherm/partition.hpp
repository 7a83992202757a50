#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tritherm/digits.hpp"
#include "tritherm/pair.hpp"

namespace tritherm {

struct PartitionResult {
  long N = 0;
  Rat s;
  Real value;                         // scalar for exact pairs, midpoint otherwise
  std::optional<Interval> value_enc;  // certified enclosure for inexact pairs
  Real min_denom;                     // smallest |x + alpha y + beta z|; 0 on a pole
  bool pole = false;
  std::string pole_word;  // first offending word in visit order, e.g. "10"
  long pole_count = 0;
  long precision_bits = 0;

  PartitionResult() : value(64), min_denom(64) {}
};

// Number of prefix letters that define the fixed summation blocks for length
// N. A function of N alone: the partial-sum grouping, and therefore the
// result, never depends on the worker count.
long partition_block_bits(long N);

// Z_N = sum over all 2^N generator words of 1/|x(I) + alpha y(I) + beta z(I)|^s.
// Traversal carries the running row vector (1, alpha, beta) * A^prefix; words
// are visited depth-first with the sigma = 1 branch first, and block partial
// sums are combined in ascending block order. Zero (or certified-
// indistinguishable-from-zero) denominators are flagged as poles and their
// terms excluded; the first pole word in visit order is recorded. When the
// smallest nonzero denominator falls below 2^(-prec/2) (or an inexact pair
// hits a pole), the whole sum is recomputed once at doubled precision.
PartitionResult z_value(const PairRepr& pair, long N, const Rat& s, mpfr_prec_t prec,
                        unsigned threads = 0);

// The shared per-term chain: |den| -> RNDN conversion -> power s -> reciprocal.
// Oracles and closed-form checks call this so engine comparisons in exact
// mode are bitwise.
Real term_value(const Rat& den, const Rat& s, mpfr_prec_t prec);

struct TraceEntry {
  PartitionResult z;
  Real log_value;
  Real normalized;  // log Z_N / (s N^k), or log Z_N / N in classic form
  std::optional<Interval> normalized_enc;

  TraceEntry() : log_value(64), normalized(64) {}
};

struct FreeEnergyTrace {
  Rat s, k;
  long precision_bits = 0;
  bool classic = false;  // normalized by N alone (the k = 1 form without 1/s)
  std::vector<TraceEntry> entries;
};

FreeEnergyTrace free_energy_trace(const PairRepr& pair, long n_min, long n_max,
                                  const Rat& s, const Rat& k, mpfr_prec_t prec,
                                  unsigned threads = 0, bool classic = false);

// 1/|d_{m-1}|^s for the m-digit word (1^{a_1}, 0, ..., 1^{a_m}, 0): the
// single term of Z_{N_m} that the divergence argument bounds from below.
// Raises PoleError when d = 0 (terminating sequence).
Real distinguished_term(const PairRepr& pair, const DigitSequence& digits, long m,
                        const Rat& s, mpfr_prec_t prec);

}  // namespace tritherm
