#pragma once

#include <memory>
#include <string>
#include <variant>

#include "tritherm/digits.hpp"
#include "tritherm/numeric.hpp"

namespace tritherm {

// Exact (alpha, beta).
struct RationalPair {
  Rat alpha, beta;
};

// Certified enclosures of (alpha, beta); the interval precision is the stated
// input precision, and no operation may pretend to know more.
struct RealPair {
  Interval alpha, beta;
};

// A point known only through its triangle sequence; materialized on demand as
// the representative of the depth-`depth` nested triangle.
struct DigitDefinedPair {
  std::shared_ptr<const DigitSequence> digits;
  long depth = 0;
};

class PairRepr {
 public:
  using Variant = std::variant<RationalPair, RealPair, DigitDefinedPair>;

  PairRepr(RationalPair p) : v_(std::move(p)) {}
  PairRepr(RealPair p) : v_(std::move(p)) {}
  PairRepr(DigitDefinedPair p) : v_(std::move(p)) {}

  static PairRepr from_rational(const Rat& alpha, const Rat& beta) {
    return PairRepr(RationalPair{alpha, beta});
  }
  // A decimal pair trusted to `input_bits` bits: each coordinate becomes the
  // interval [value - 2^-input_bits, value + 2^-input_bits] at `prec`.
  static PairRepr from_decimal(const Rat& alpha, const Rat& beta, long input_bits,
                               mpfr_prec_t prec);
  static PairRepr from_digits(DigitSequence digits, long depth);

  const Variant& value() const { return v_; }
  bool is_rational() const { return std::holds_alternative<RationalPair>(v_); }
  bool is_real() const { return std::holds_alternative<RealPair>(v_); }
  bool is_digit_defined() const { return std::holds_alternative<DigitDefinedPair>(v_); }

  // Collapses DigitDefined to the exact rational representative of its nested
  // triangle; Rational and Real pass through unchanged.
  std::variant<RationalPair, RealPair> resolve() const;

  std::string describe() const;

 private:
  Variant v_;
};

// The pair (q, q^2) with q the real root of q^3 + q - 1 = 0, as certified
// enclosures at `prec`. Its triangle sequence is all zeros.
PairRepr cubic_fixed_point(mpfr_prec_t prec);

// Parses "3/4,1/2" (exact), "0.7,0.2" with input_bits >= 1 (certified real),
// or the name "cubic-fixed-point". Decimal coordinates without a stated
// input_bits (pass input_bits < 0 for "not provided") are refused: the
// engine never invents accuracy.
PairRepr parse_pair(const std::string& text, long input_bits, mpfr_prec_t prec);

// Parses "3", "3/4", "0.25", "-1.5e-2" into an exact rational.
Rat parse_rat(const std::string& text);

}  // namespace tritherm
