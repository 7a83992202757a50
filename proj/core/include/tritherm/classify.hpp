#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "tritherm/construct.hpp"
#include "tritherm/pair.hpp"
#include "tritherm/partition.hpp"

namespace tritherm {

// The smallest constant C for which |p + alpha q + beta r| >= 1/(C b^d),
// b = max(|p|,|q|,|r|), holds over every relatively prime triple with
// b <= B_max and (q, r) != (0, 0). C is rounded up so the inequality is
// certified over the whole enumeration; the witness attains the minimum of
// |p + alpha q + beta r| * b^d, ties broken lexicographically on (p, q, r).
struct DiophantineFit {
  Rat d;
  long B_max = 0;
  Real C;
  std::array<long, 3> witness{0, 0, 0};
  Real min_form;  // certified lower bound on |p + alpha q + beta r| at the witness
  long triples_checked = 0;

  DiophantineFit() : C(64), min_form(64) {}
};

// Enumerates sign-canonical representatives (first nonzero coordinate
// positive); each (p,q,r) stands for itself and its negation, which share
// |form| and b. Raises ExactZero when some triple is exactly dependent,
// PrecisionExhausted when a form cannot be separated from zero at `prec`.
DiophantineFit diophantine_check(const PairRepr& pair, const Rat& d, long B_max,
                                 mpfr_prec_t prec, unsigned threads = 0);

// Exact Fibonacci numbers, F_1 = F_2 = 1, by the addition recurrence.
Int fibonacci(long N);

// 2^N C^s F_N^(s d), every step rounded down: a reported bound below the true
// value, so `Z <= bound` certifies the true inequality.
Real fibonacci_bound(long N, const Rat& s, const Real& C, const Rat& d,
                     mpfr_prec_t prec);

struct Theorem2Report {
  Rat s, k, d;
  long B_max = 0;
  long n_min = 0, n_max = 0, tail_start = 0;
  bool exploratory = false;  // parameters outside s > 2, k > 1
  FreeEnergyTrace trace;
  DiophantineFit fit;
  std::vector<Real> bounds;     // fibonacci_bound per N, parallel to trace
  bool pointwise_ok = false;    // Z_N <= bound at every N
  bool tail_decreasing = false; // certified strict decrease from tail_start on
  bool final_below = false;     // certified final normalized < threshold
  Real final_normalized;
  Rat threshold;

  Theorem2Report() : final_normalized(64) {}
};

// The desk-scale half of the vanishing-limit claim: trace the normalized
// free energy, fit (C, d) by enumeration, check the pointwise Fibonacci
// ceiling, and certify the tail trend. Inexact and exact pairs both run in
// enclosure mode so the trend comparisons are certified. Any pole row aborts
// with PoleError; a rationally dependent pair aborts with ExactZero from the
// fit.
Theorem2Report theorem2_experiment(const PairRepr& pair, const Rat& s, const Rat& k,
                                   long n_min, long n_max, const Rat& d, long B_max,
                                   mpfr_prec_t prec, unsigned threads = 0,
                                   long tail_start = 10,
                                   const Rat& threshold = Rat(1, 20));

struct Theorem1Level {
  long m = 0;
  std::string a_next;           // decimal rendering of a_{m+1}
  unsigned long a_bits = 0;     // bit length of a_{m+1}
  Int N_m;
  unsigned long x_bits = 0;     // bit length of x at this level
  bool x_gt_a = false;          // exact: x > a_{m+1}
  bool a_gt_exp = false;        // certified: a_{m+1} > e^(f(m+1) N_m^k)
  Real lower_bound;             // s log x / N_m^k, rounded down
  Real threshold;               // s f(m+1), rounded up
  bool lower_gt_threshold = false;
  std::optional<bool> lemma_holds;  // |d_{m-1}| |x| <= 1 for the representative

  Theorem1Level() : lower_bound(64), threshold(64) {}
};

struct DivergenceReport {
  Theorem1Config cfg;
  Rat s;
  bool verdict = false;  // every achieved level passed all three checks
  bool overflowed = false;
  long levels_achieved = 0;
  unsigned long next_digit_bits = 0;
  std::vector<Theorem1Level> levels;
  bool term_vs_sum_checked = false;
  bool term_vs_sum_ok = false;  // 1/|d|^s < Z_{N_1} by full enumeration
  Real distinguished;
  Real z_at_n1;

  DivergenceReport() : distinguished(64), z_at_n1(64) {}
};

// Builds the scheduled digits, the exact x recurrence on top of them, and
// checks the chain x > a_{m+1} > e^(f(m+1) N_m^k) plus the normalized log
// comparison at every achieved level. When N_1 fits under `enum_ceiling` the
// single distinguished term is also compared against the full Z_{N_1} sum.
DivergenceReport theorem1_witness(const Theorem1Config& cfg, const Rat& s,
                                  mpfr_prec_t prec, long enum_ceiling = 28,
                                  unsigned threads = 0);

}  // namespace tritherm
