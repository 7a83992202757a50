#include "tritherm/construct.hpp"

#include "tritherm/errors.hpp"
#include "tritherm/trimap.hpp"

namespace tritherm {

namespace {

Sgn orient(const RationalPoint2& p, const RationalPoint2& q, const RationalPoint2& r) {
  Rat v = (q.u - p.u) * (r.v - p.v) - (q.v - p.v) * (r.u - p.u);
  return sgn_of(v);
}

}  // namespace

bool triangle_contains(const NestedTriangle& t, const RationalPoint2& p) {
  Sgn a = orient(t.v0, t.v1, p);
  Sgn b = orient(t.v1, t.v2, p);
  Sgn c = orient(t.v2, t.v0, p);
  bool has_pos = a == Sgn::Pos || b == Sgn::Pos || c == Sgn::Pos;
  bool has_neg = a == Sgn::Neg || b == Sgn::Neg || c == Sgn::Neg;
  return !(has_pos && has_neg);
}

Rat enclosure_area(const DigitSequence& digits) {
  std::vector<IntVec3> X = x_vectors(digits);
  const long n = digits.size() - 1;
  auto at = [&](long j) -> const IntVec3& { return X[static_cast<size_t>(j + 3)]; };
  IntMat3 cols = IntMat3::from_columns(at(n - 1), at(n), at(n) + at(n - 2));
  Rat a = projective_triangle_area(cols);
  return sgn_of(a) == Sgn::Neg ? Rat(-a) : a;
}

Enclosure pair_from_digits(const DigitSequence& digits) {
  if (digits.empty()) throw OutOfDomain("digit sequence must be nonempty");
  Enclosure enc;
  enc.digits = digits;
  enc.digits.terminated = false;
  enc.depth = digits.size();
  enc.vertices = nested_triangle(digits);
  enc.representative = nested_representative(digits);

  DigitSequence seen = triangle_sequence(
      PairRepr::from_rational(enc.representative.u, enc.representative.v), enc.depth);
  if (seen.size() != enc.depth || seen.digits != enc.digits.digits) {
    throw Error("enclosure representative does not reproduce its digit prefix");
  }
  return enc;
}

Enclosure refine(const Enclosure& enc, const DigitSequence& extra) {
  DigitSequence joined = enc.digits;
  joined.digits.insert(joined.digits.end(), extra.digits.begin(), extra.digits.end());
  joined.terminated = false;
  Enclosure deeper = pair_from_digits(joined);
  for (const RationalPoint2* v :
       {&deeper.vertices.v0, &deeper.vertices.v1, &deeper.vertices.v2}) {
    if (!triangle_contains(enc.vertices, *v)) {
      throw Error("refinement left the parent triangle");
    }
  }
  return deeper;
}

Interval theorem1_f(const Theorem1Config& cfg, long m, mpfr_prec_t prec) {
  switch (cfg.f) {
    case Theorem1Config::Growth::Linear:
      return Interval::of_int(m, prec);
    case Theorem1Config::Growth::Log:
      return Interval::of_int(m + 1, prec).log();
    case Theorem1Config::Growth::Const:
      return Interval::of_rat(cfg.f_const, prec);
  }
  throw Error("unknown growth preset");
}

bool theorem1_hypothesis_ok(const Theorem1Config& cfg) {
  return cfg.f != Theorem1Config::Growth::Const;
}

namespace {

// Saturating conversion for magnitudes that may exceed any native range.
unsigned long to_ulong_saturating(mpfr_srcptr v) {
  double d = mpfr_get_d(v, MPFR_RNDD);
  if (!(d >= 0)) return 0;
  if (!(d < 1.8e19)) return ~0ul;
  return static_cast<unsigned long>(d);
}

// Certified floor(exp(e)) + 1, raising working precision until the floor is
// unambiguous. `recompute` re-evaluates the exponent enclosure at the asked
// precision so widening never stalls the loop.
template <typename Recompute>
Int floor_exp_plus_one(Recompute recompute, mpfr_prec_t start_prec) {
  mpfr_prec_t p = start_prec;
  for (int tries = 0; tries < 24; ++tries) {
    Interval value = recompute(p).exp();
    auto f = value.certified_floor();
    if (f.has_value()) return *f + 1;
    p += p / 2 + 64;
  }
  throw PrecisionExhausted("exponential floor would not certify");
}

}  // namespace

Theorem1Digits theorem1_digits(const Theorem1Config& cfg) {
  if (cfg.a1 <= 2) throw OutOfDomain("a_1 must exceed 2");
  if (sgn_of(cfg.k) != Sgn::Pos) throw OutOfDomain("k must be positive");
  if (cfg.m_max < 1) throw OutOfDomain("m_max must be at least 1");
  if (cfg.f == Theorem1Config::Growth::Const && sgn_of(cfg.f_const) != Sgn::Pos) {
    throw OutOfDomain("constant growth value must be positive");
  }

  Theorem1Digits out;
  out.digits.digits.push_back(cfg.a1);
  Int n_m = cfg.a1 + 1;  // N_1
  out.n_values.push_back(n_m);

  const mpfr_prec_t probe = 192;
  for (long m = 1; m <= cfg.m_max; ++m) {
    // Bits of the next digit: f(m+1) * N_m^k / ln 2, certified both ways.
    Interval exponent = theorem1_f(cfg, m + 1, probe) * int_pow_rat(n_m, cfg.k, probe);
    Interval bits = exponent / Interval::of_int(2L, probe).log();
    Interval budget = Interval::of_int(Int(cfg.bit_budget), probe);
    auto within = bits.less_than(budget);
    if (!within.has_value() || !*within) {
      out.overflowed = true;
      out.next_digit_bits = to_ulong_saturating(bits.lo().raw());
      break;
    }
    unsigned long need = to_ulong_saturating(bits.hi().raw()) + 96;
    Int a = floor_exp_plus_one(
        [&](mpfr_prec_t p) {
          return theorem1_f(cfg, m + 1, p) * int_pow_rat(n_m, cfg.k, p);
        },
        static_cast<mpfr_prec_t>(need));
    out.digits.digits.push_back(a);
    out.levels_achieved = m;
    n_m += a + 1;  // N_{m+1} = N_m + a_{m+1} + 1
    out.n_values.push_back(n_m);
  }
  return out;
}

}  // namespace tritherm
