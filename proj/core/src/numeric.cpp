#include "tritherm/numeric.hpp"

#include <cstdlib>

namespace tritherm {

Int floor_div(const Rat& a, const Rat& b) {
  if (sgn_of(b) == Sgn::Zero) throw Error("floor_div: division by zero");
  Rat q = a / b;
  Int out;
  mpz_fdiv_q(out.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  return out;
}

Real Real::parse(const std::string& s, mpfr_prec_t prec, mpfr_rnd_t rnd) {
  Real r(prec);
  if (s.empty() || mpfr_set_str(r.raw(), s.c_str(), 10, rnd) != 0) {
    throw Error("Real::parse: not a decimal number: '" + s + "'");
  }
  return r;
}

Interval Interval::of_int(long v, mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_set_si(r.lo_.raw(), v, MPFR_RNDD);
  mpfr_set_si(r.hi_.raw(), v, MPFR_RNDU);
  return r;
}

Interval Interval::of_int(const Int& v, mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_set_z(r.lo_.raw(), v.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(r.hi_.raw(), v.get_mpz_t(), MPFR_RNDU);
  return r;
}

Interval Interval::of_rat(const Rat& q, mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_set_q(r.lo_.raw(), q.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(r.hi_.raw(), q.get_mpq_t(), MPFR_RNDU);
  return r;
}

Interval Interval::of_rat_pm(const Rat& q, long radius_bits, mpfr_prec_t prec) {
  Rat radius(1);
  Int den(1);
  mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(),
               static_cast<unsigned long>(radius_bits));
  radius /= Rat(den);
  return of_endpoints(q - radius, q + radius, prec);
}

Interval Interval::of_endpoints(const Rat& lo, const Rat& hi, mpfr_prec_t prec) {
  if (lo > hi) throw Error("Interval::of_endpoints: lo > hi");
  Interval r(prec);
  mpfr_set_q(r.lo_.raw(), lo.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(r.hi_.raw(), hi.get_mpq_t(), MPFR_RNDU);
  return r;
}

Interval Interval::operator+(const Interval& o) const {
  Interval r(precision());
  mpfr_add(r.lo_.raw(), lo_.raw(), o.lo_.raw(), MPFR_RNDD);
  mpfr_add(r.hi_.raw(), hi_.raw(), o.hi_.raw(), MPFR_RNDU);
  return r;
}

Interval Interval::operator-(const Interval& o) const {
  Interval r(precision());
  mpfr_sub(r.lo_.raw(), lo_.raw(), o.hi_.raw(), MPFR_RNDD);
  mpfr_sub(r.hi_.raw(), hi_.raw(), o.lo_.raw(), MPFR_RNDU);
  return r;
}

Interval Interval::operator*(const Interval& o) const {
  // min/max over the four endpoint products, each rounded both ways.
  Interval r(precision());
  mpfr_t t;
  mpfr_init2(t, precision());
  bool first = true;
  const mpfr_srcptr a[2] = {lo_.raw(), hi_.raw()};
  const mpfr_srcptr b[2] = {o.lo_.raw(), o.hi_.raw()};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      mpfr_mul(t, a[i], b[j], MPFR_RNDD);
      if (first || mpfr_cmp(t, r.lo_.raw()) < 0) mpfr_set(r.lo_.raw(), t, MPFR_RNDD);
      mpfr_mul(t, a[i], b[j], MPFR_RNDU);
      if (first || mpfr_cmp(t, r.hi_.raw()) > 0) mpfr_set(r.hi_.raw(), t, MPFR_RNDU);
      first = false;
    }
  }
  mpfr_clear(t);
  return r;
}

Interval Interval::operator/(const Interval& o) const {
  auto s = o.sign();
  if (!s || *s == Sgn::Zero) {
    throw Error("Interval division by an interval containing zero");
  }
  Interval r(precision());
  if (*s == Sgn::Pos) {
    mpfr_div(r.lo_.raw(), lo_.raw(), o.hi_.raw(), MPFR_RNDD);
    mpfr_div(r.hi_.raw(), hi_.raw(), o.lo_.raw(), MPFR_RNDU);
    // The lo/hi pairing above is only right for a nonnegative numerator;
    // redo the general case via min/max when the numerator spans zero.
    if (mpfr_sgn(lo_.raw()) < 0) {
      mpfr_div(r.lo_.raw(), lo_.raw(), o.lo_.raw(), MPFR_RNDD);
      mpfr_t t;
      mpfr_init2(t, precision());
      mpfr_div(t, lo_.raw(), o.hi_.raw(), MPFR_RNDD);
      if (mpfr_cmp(t, r.lo_.raw()) < 0) mpfr_set(r.lo_.raw(), t, MPFR_RNDD);
      mpfr_div(r.hi_.raw(), hi_.raw(), o.lo_.raw(), MPFR_RNDU);
      mpfr_div(t, hi_.raw(), o.hi_.raw(), MPFR_RNDU);
      if (mpfr_cmp(t, r.hi_.raw()) > 0) mpfr_set(r.hi_.raw(), t, MPFR_RNDU);
      mpfr_clear(t);
    }
  } else {
    // Negative divisor: a/b = (-a)/(-b).
    return (-*this) / (-o);
  }
  return r;
}

Interval Interval::operator-() const {
  Interval r(precision());
  mpfr_neg(r.lo_.raw(), hi_.raw(), MPFR_RNDD);
  mpfr_neg(r.hi_.raw(), lo_.raw(), MPFR_RNDU);
  return r;
}

Interval Interval::abs() const {
  auto s = sign();
  if (s && *s != Sgn::Neg) return *this;
  if (s && *s == Sgn::Neg) return -*this;
  // Straddles zero: [0, max(|lo|, hi)].
  Interval r(precision());
  mpfr_set_zero(r.lo_.raw(), 1);
  mpfr_neg(r.hi_.raw(), lo_.raw(), MPFR_RNDU);
  if (mpfr_cmp(hi_.raw(), r.hi_.raw()) > 0) mpfr_set(r.hi_.raw(), hi_.raw(), MPFR_RNDU);
  return r;
}

Interval Interval::add_int(const Int& n) const {
  Interval r(precision());
  mpfr_add_z(r.lo_.raw(), lo_.raw(), n.get_mpz_t(), MPFR_RNDD);
  mpfr_add_z(r.hi_.raw(), hi_.raw(), n.get_mpz_t(), MPFR_RNDU);
  return r;
}

Interval Interval::sub_from_int(const Int& n) const {
  Interval r(precision());
  mpfr_z_sub(r.lo_.raw(), n.get_mpz_t(), hi_.raw(), MPFR_RNDD);
  mpfr_z_sub(r.hi_.raw(), n.get_mpz_t(), lo_.raw(), MPFR_RNDU);
  return r;
}

Interval Interval::mul_int(const Int& n) const {
  int s = mpz_sgn(n.get_mpz_t());
  Interval r(precision());
  if (s == 0) return r;  // [0,0]
  if (s > 0) {
    mpfr_mul_z(r.lo_.raw(), lo_.raw(), n.get_mpz_t(), MPFR_RNDD);
    mpfr_mul_z(r.hi_.raw(), hi_.raw(), n.get_mpz_t(), MPFR_RNDU);
  } else {
    mpfr_mul_z(r.lo_.raw(), hi_.raw(), n.get_mpz_t(), MPFR_RNDD);
    mpfr_mul_z(r.hi_.raw(), lo_.raw(), n.get_mpz_t(), MPFR_RNDU);
  }
  return r;
}

Interval Interval::pow(const Real& s) const {
  if (mpfr_sgn(lo_.raw()) <= 0) {
    throw Error("Interval::pow requires a certified-positive base");
  }
  if (mpfr_sgn(s.raw()) <= 0) throw Error("Interval::pow requires s > 0");
  Interval r(precision());
  mpfr_pow(r.lo_.raw(), lo_.raw(), s.raw(), MPFR_RNDD);
  mpfr_pow(r.hi_.raw(), hi_.raw(), s.raw(), MPFR_RNDU);
  return r;
}

Interval Interval::recip() const {
  auto s = sign();
  if (!s || *s == Sgn::Zero) throw Error("Interval::recip of interval containing zero");
  Interval r(precision());
  mpfr_ui_div(r.lo_.raw(), 1, hi_.raw(), MPFR_RNDD);
  mpfr_ui_div(r.hi_.raw(), 1, lo_.raw(), MPFR_RNDU);
  return r;
}

Interval Interval::log() const {
  if (mpfr_sgn(lo_.raw()) <= 0) {
    throw Error("Interval::log requires a certified-positive argument");
  }
  Interval r(precision());
  mpfr_log(r.lo_.raw(), lo_.raw(), MPFR_RNDD);
  mpfr_log(r.hi_.raw(), hi_.raw(), MPFR_RNDU);
  return r;
}

Interval Interval::exp() const {
  Interval r(precision());
  mpfr_exp(r.lo_.raw(), lo_.raw(), MPFR_RNDD);
  mpfr_exp(r.hi_.raw(), hi_.raw(), MPFR_RNDU);
  return r;
}

std::optional<Sgn> Interval::sign() const {
  if (mpfr_sgn(lo_.raw()) > 0) return Sgn::Pos;
  if (mpfr_sgn(hi_.raw()) < 0) return Sgn::Neg;
  if (is_exact_zero()) return Sgn::Zero;
  return std::nullopt;
}

std::optional<Int> Interval::certified_floor() const {
  Int flo, fhi;
  mpfr_get_z(flo.get_mpz_t(), lo_.raw(), MPFR_RNDD);
  mpfr_get_z(fhi.get_mpz_t(), hi_.raw(), MPFR_RNDD);
  if (flo == fhi) return flo;
  return std::nullopt;
}

std::optional<bool> Interval::less_than(const Interval& o) const {
  if (mpfr_cmp(hi_.raw(), o.lo_.raw()) < 0) return true;
  if (mpfr_cmp(lo_.raw(), o.hi_.raw()) >= 0) return false;
  return std::nullopt;
}

std::optional<bool> Interval::less_equal(const Interval& o) const {
  if (mpfr_cmp(hi_.raw(), o.lo_.raw()) <= 0) return true;
  if (mpfr_cmp(lo_.raw(), o.hi_.raw()) > 0) return false;
  return std::nullopt;
}

Real Interval::midpoint() const {
  Real m(precision());
  mpfr_add(m.raw(), lo_.raw(), hi_.raw(), MPFR_RNDN);
  mpfr_div_2ui(m.raw(), m.raw(), 1, MPFR_RNDN);
  return m;
}

Real Interval::width() const {
  Real w(precision());
  mpfr_sub(w.raw(), hi_.raw(), lo_.raw(), MPFR_RNDU);
  return w;
}

Interval Interval::at_precision(mpfr_prec_t prec) const {
  Interval r(prec);
  mpfr_set(r.lo_.raw(), lo_.raw(), MPFR_RNDD);
  mpfr_set(r.hi_.raw(), hi_.raw(), MPFR_RNDU);
  return r;
}

Interval Interval::of_real(const Real& v, mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_set(r.lo_.raw(), v.raw(), MPFR_RNDD);
  mpfr_set(r.hi_.raw(), v.raw(), MPFR_RNDU);
  return r;
}

Interval cubic_root_enclosure(mpfr_prec_t prec) {
  // f(t) = t^3 + t - 1 is strictly increasing; bisect on exact dyadics so
  // the bracket f(lo) < 0 < f(hi) is provable, not floating-point folklore.
  auto f_sign = [](const Rat& t) {
    Rat v = t * t * t + t - 1;
    return sgn_of(v);
  };
  // A dyadic midpoint can never be the root (rational-root test rules out
  // every rational), so each step keeps f(lo) < 0 < f(hi) strictly.
  Rat lo(0), hi(1);
  const long steps = static_cast<long>(prec) + 8;
  for (long i = 0; i < steps; ++i) {
    Rat mid = (lo + hi) / 2;
    (f_sign(mid) == Sgn::Neg ? lo : hi) = mid;
  }
  return Interval::of_endpoints(lo, hi, prec);
}

Interval int_pow_rat(const Int& base, const Rat& k, mpfr_prec_t prec) {
  if (sgn_of(base) != Sgn::Pos) throw OutOfDomain("base must be positive");
  if (k.get_den() == 1 && k.get_num().fits_ulong_p()) {
    unsigned long e = k.get_num().get_ui();
    if (e * mpz_sizeinbase(base.get_mpz_t(), 2) <= (1ul << 24)) {
      Int p;
      mpz_pow_ui(p.get_mpz_t(), base.get_mpz_t(), e);
      return Interval::of_int(p, prec);
    }
  }
  return (Interval::of_int(base, prec).log() * Interval::of_rat(k, prec)).exp();
}

}  // namespace tritherm
