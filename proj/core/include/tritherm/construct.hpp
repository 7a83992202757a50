#pragma once

#include <vector>

#include "tritherm/convergents.hpp"
#include "tritherm/digits.hpp"

namespace tritherm {

// A nested-triangle enclosure: every point whose triangle sequence begins
// with `digits` lies in the closed triangle of `vertices`, and
// `representative` is an interior rational point realizing the digit prefix.
struct Enclosure {
  DigitSequence digits;
  long depth = 0;
  NestedTriangle vertices;
  RationalPoint2 representative;
};

// Closed-triangle membership by exact orientation tests.
bool triangle_contains(const NestedTriangle& t, const RationalPoint2& p);

// |projective area| of the deepest nested triangle. Strictly decreases under
// refinement.
Rat enclosure_area(const DigitSequence& digits);

// Builds the deepest enclosure for a finite digit list and round-trips the
// representative through the orbit digits as an internal check.
Enclosure pair_from_digits(const DigitSequence& digits);

// The enclosure for digits ++ extra; result vertices lie inside the original.
Enclosure refine(const Enclosure& enc, const DigitSequence& extra);

// Digit schedule a_{m+1} = floor(exp(f(m+1) * N_m^k)) + 1 with
// N_m = a_1 + ... + a_m + m. The +1 makes a_{m+1} > e^{f(m+1) N_m^k} strict
// under any rounding of the exponential.
struct Theorem1Config {
  Rat k = Rat(1);  // exponent on N_m; must be > 0
  enum class Growth { Linear, Log, Const } f = Growth::Linear;
  Rat f_const = Rat(1);  // value when f = Const
  long m_max = 2;        // generate digits a_1 .. a_{m_max + 1}
  Int a1 = Int(3);       // must exceed 2
  unsigned long bit_budget = 1ul << 20;  // refuse digits wider than this
};

// f(m) under the configured growth preset, as a certified enclosure.
Interval theorem1_f(const Theorem1Config& cfg, long m, mpfr_prec_t prec);

// Whether the preset satisfies the divergence hypothesis (strictly increasing
// to infinity).
bool theorem1_hypothesis_ok(const Theorem1Config& cfg);

struct Theorem1Digits {
  DigitSequence digits;       // a_1 .. a_{levels_achieved + 1}
  std::vector<Int> n_values;  // N_1 .. N_{levels_achieved + 1}
  bool overflowed = false;    // the next digit exceeded the bit budget
  long levels_achieved = 0;   // deepest m with a_{m+1} generated
  unsigned long next_digit_bits = 0;  // certified lower bound when overflowed
};

// Overflow is an expected outcome, not an error: the schedule exceeds any
// storage after a few terms by design.
Theorem1Digits theorem1_digits(const Theorem1Config& cfg);

}  // namespace tritherm
