#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <optional>
#include <string>
#include <utility>

#include "tritherm/errors.hpp"

namespace tritherm {

// Exact unbounded integers and rationals. No fixed-width fallback anywhere:
// Theorem-1 digit sequences overflow any machine word after two terms.
using Int = mpz_class;
using Rat = mpq_class;

enum class Sgn : int { Neg = -1, Zero = 0, Pos = 1 };

inline Sgn sgn_of(const Int& n) {
  int s = mpz_sgn(n.get_mpz_t());
  return s < 0 ? Sgn::Neg : (s > 0 ? Sgn::Pos : Sgn::Zero);
}
inline Sgn sgn_of(const Rat& q) {
  int s = mpq_sgn(q.get_mpq_t());
  return s < 0 ? Sgn::Neg : (s > 0 ? Sgn::Pos : Sgn::Zero);
}

// floor(a / b) for exact rationals, b != 0.
Int floor_div(const Rat& a, const Rat& b);

// ---------------------------------------------------------------------------
// Real: RAII wrapper over mpfr_t with an explicit precision. Arithmetic goes
// through raw() and the mpfr_* API so every rounding mode is spelled out at
// the call site.
// ---------------------------------------------------------------------------
class Real {
 public:
  explicit Real(mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
  }
  Real(const Real& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  Real(Real&& o) noexcept {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_swap(v_, o.v_);
  }
  Real& operator=(const Real& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  static Real of(double v, mpfr_prec_t prec) {
    Real r(prec);
    mpfr_set_d(r.v_, v, MPFR_RNDN);
    return r;
  }
  static Real of(long v, mpfr_prec_t prec) {
    Real r(prec);
    mpfr_set_si(r.v_, v, MPFR_RNDN);
    return r;
  }
  static Real of(const Int& n, mpfr_prec_t prec, mpfr_rnd_t rnd) {
    Real r(prec);
    mpfr_set_z(r.v_, n.get_mpz_t(), rnd);
    return r;
  }
  static Real of(const Rat& q, mpfr_prec_t prec, mpfr_rnd_t rnd) {
    Real r(prec);
    mpfr_set_q(r.v_, q.get_mpq_t(), rnd);
    return r;
  }
  // Parses a decimal string; throws Error on junk.
  static Real parse(const std::string& s, mpfr_prec_t prec, mpfr_rnd_t rnd);

  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }
  mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  int cmp(const Real& o) const { return mpfr_cmp(v_, o.v_); }
  bool is_nan() const { return mpfr_nan_p(v_) != 0; }

 private:
  mpfr_t v_;
};

// ---------------------------------------------------------------------------
// Interval: closed interval [lo, hi] with outward-rounded endpoints at a
// fixed precision. The certified-comparison workhorse: a sign query answers
// only when every point of the interval agrees.
// ---------------------------------------------------------------------------
class Interval {
 public:
  explicit Interval(mpfr_prec_t prec) : lo_(prec), hi_(prec) {}

  static Interval of_int(long v, mpfr_prec_t prec);
  static Interval of_int(const Int& v, mpfr_prec_t prec);
  static Interval of_rat(const Rat& q, mpfr_prec_t prec);
  // [q - radius, q + radius], radius = 2^-radius_bits.
  static Interval of_rat_pm(const Rat& q, long radius_bits, mpfr_prec_t prec);
  static Interval of_endpoints(const Rat& lo, const Rat& hi, mpfr_prec_t prec);
  // [v, v], re-rounded outward when prec is below v's own precision.
  static Interval of_real(const Real& v, mpfr_prec_t prec);

  const Real& lo() const { return lo_; }
  const Real& hi() const { return hi_; }
  mpfr_prec_t precision() const { return lo_.precision(); }

  Interval operator+(const Interval& o) const;
  Interval operator-(const Interval& o) const;
  Interval operator*(const Interval& o) const;
  // Divisor must be sign-definite; throws Error otherwise (callers certify
  // signs first and raise the domain-appropriate error).
  Interval operator/(const Interval& o) const;
  Interval operator-() const;
  Interval abs() const;

  Interval add_int(const Int& n) const;
  Interval sub_from_int(const Int& n) const;  // n - *this
  Interval mul_int(const Int& n) const;

  // [lo,hi]^s for certified-positive base and s > 0.
  Interval pow(const Real& s) const;
  Interval recip() const;  // 1 / *this, sign-definite required
  Interval log() const;    // certified-positive required
  Interval exp() const;

  bool contains_zero() const {
    return mpfr_sgn(lo_.raw()) <= 0 && mpfr_sgn(hi_.raw()) >= 0;
  }
  bool is_exact_zero() const {
    return mpfr_zero_p(lo_.raw()) && mpfr_zero_p(hi_.raw());
  }
  // Certified sign; nullopt when the interval straddles zero.
  std::optional<Sgn> sign() const;
  // Certified floor of every point in the interval, when unique.
  std::optional<Int> certified_floor() const;

  // Certified comparisons (nullopt when the intervals overlap).
  std::optional<bool> less_than(const Interval& o) const;
  std::optional<bool> less_equal(const Interval& o) const;

  Real midpoint() const;
  Real width() const;

  // Re-rounds endpoints outward at a new precision.
  Interval at_precision(mpfr_prec_t prec) const;

 private:
  Real lo_, hi_;
};

// Certified enclosure of the real root of t^3 + t - 1 = 0 (exact dyadic
// bisection, then outward rounding at `prec`). The endpoints are provably on
// opposite sides of the root.
Interval cubic_root_enclosure(mpfr_prec_t prec);

// base^k for base >= 1 and rational k >= 0: exact integer power when k is an
// integer and the result stays small enough to materialize, otherwise
// exp(k log base).
Interval int_pow_rat(const Int& base, const Rat& k, mpfr_prec_t prec);

}  // namespace tritherm
