#include "tritherm/trimap.hpp"

#include "tritherm/errors.hpp"

namespace tritherm {

namespace {

Int sector_rational(const RationalPair& p) {
  if (sgn_of(p.beta) == Sgn::Neg || p.beta > p.alpha || p.alpha > 1) {
    throw OutOfDomain("pair outside the triangle 1 >= alpha >= beta >= 0");
  }
  if (sgn_of(p.beta) == Sgn::Zero) throw Terminated("beta = 0");
  return floor_div(Rat(1) - p.alpha, p.beta);
}

RationalPair step_rational(const RationalPair& p, const Int& k) {
  Rat a = p.beta / p.alpha;
  Rat b = (Rat(1) - p.alpha - Rat(k) * p.beta) / p.alpha;
  return {a, b};
}

// Certified-true / certified-false / undecidable at this precision.
void require_decided(const std::optional<bool>& q, const char* what) {
  if (!q.has_value()) {
    throw PrecisionExhausted(std::string("cannot decide ") + what +
                             " at the stated precision");
  }
}

Int sector_real(const RealPair& p) {
  const mpfr_prec_t prec = p.alpha.precision();
  if (p.beta.is_exact_zero()) throw Terminated("beta = 0");
  if (mpfr_sgn(p.beta.hi().raw()) < 0) throw OutOfDomain("beta < 0");
  if (p.beta.contains_zero()) {
    throw PrecisionExhausted(
        "beta indistinguishable from 0; termination is not certifiable");
  }
  auto ordered = p.beta.less_equal(p.alpha);
  require_decided(ordered, "beta <= alpha");
  if (!*ordered) throw OutOfDomain("beta > alpha");
  auto bounded = p.alpha.less_equal(Interval::of_int(1L, prec));
  require_decided(bounded, "alpha <= 1");
  if (!*bounded) throw OutOfDomain("alpha > 1");

  Interval t = p.alpha.sub_from_int(Int(1)) / p.beta;
  auto k = t.certified_floor();
  if (!k.has_value()) {
    throw PrecisionExhausted("sector boundary unresolved at the stated precision");
  }
  if (sgn_of(*k) == Sgn::Neg) throw OutOfDomain("alpha > 1");
  return *k;
}

RealPair step_real(const RealPair& p, const Int& k) {
  Interval num2 = p.alpha.sub_from_int(Int(1)) - p.beta.mul_int(k);
  return {p.beta / p.alpha, num2 / p.alpha};
}

}  // namespace

Int sector_index(const PairRepr& pair) {
  auto res = pair.resolve();
  if (auto* r = std::get_if<RationalPair>(&res)) return sector_rational(*r);
  return sector_real(std::get<RealPair>(res));
}

PairRepr apply_T(const PairRepr& pair) {
  auto res = pair.resolve();
  if (auto* r = std::get_if<RationalPair>(&res)) {
    return PairRepr(step_rational(*r, sector_rational(*r)));
  }
  const auto& rp = std::get<RealPair>(res);
  return PairRepr(step_real(rp, sector_real(rp)));
}

DigitSequence triangle_sequence(const PairRepr& pair, long depth) {
  if (depth < 0) throw OutOfDomain("depth must be nonnegative");
  DigitSequence out;
  auto res = pair.resolve();
  if (auto* r = std::get_if<RationalPair>(&res)) {
    RationalPair cur = *r;
    for (long i = 0; i < depth; ++i) {
      Int k;
      try {
        k = sector_rational(cur);
      } catch (const Terminated&) {
        out.terminated = true;
        return out;
      }
      out.digits.push_back(k);
      cur = step_rational(cur, k);
    }
    return out;
  }
  RealPair cur = std::get<RealPair>(res);
  for (long i = 0; i < depth; ++i) {
    Int k;
    try {
      k = sector_real(cur);
    } catch (const PrecisionExhausted& e) {
      throw PrecisionExhausted(e.what(), out.digits.size(), out.to_decimal_strings());
    }
    out.digits.push_back(k);
    cur = step_real(cur, k);
  }
  return out;
}

std::vector<PairRepr> orbit(const PairRepr& pair, long depth) {
  if (depth < 0) throw OutOfDomain("depth must be nonnegative");
  std::vector<PairRepr> out;
  auto res = pair.resolve();
  if (auto* r = std::get_if<RationalPair>(&res)) {
    RationalPair cur = *r;
    out.push_back(PairRepr(cur));
    for (long i = 0; i < depth; ++i) {
      Int k;
      try {
        k = sector_rational(cur);
      } catch (const Terminated&) {
        break;
      }
      cur = step_rational(cur, k);
      out.push_back(PairRepr(cur));
    }
    return out;
  }
  RealPair cur = std::get<RealPair>(res);
  out.push_back(PairRepr(cur));
  for (long i = 0; i < depth; ++i) {
    cur = step_real(cur, sector_real(cur));
    out.push_back(PairRepr(cur));
  }
  return out;
}

}  // namespace tritherm
