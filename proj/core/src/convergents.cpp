#include "tritherm/convergents.hpp"

#include <sstream>

#include "tritherm/errors.hpp"

namespace tritherm {

namespace {

const IntVec3 kE1{Int(1), Int(0), Int(0)};
const IntVec3 kE2{Int(0), Int(1), Int(0)};
const IntVec3 kE3{Int(0), Int(0), Int(1)};

void require_digits(const DigitSequence& digits) {
  if (digits.empty()) throw OutOfDomain("digit sequence must be nonempty");
  for (const Int& a : digits.digits) {
    if (sgn_of(a) == Sgn::Neg) throw OutOfDomain("digits must be nonnegative");
  }
}

}  // namespace

std::vector<IntVec3> c_vectors(const DigitSequence& digits) {
  require_digits(digits);
  const long m = digits.size();
  std::vector<IntVec3> C;
  C.reserve(static_cast<size_t>(m) + 3);
  C.push_back(kE1);
  C.push_back(kE2);
  C.push_back(kE3);
  for (long j = 0; j < m; ++j) {
    const IntVec3& c3 = C[static_cast<size_t>(j)];      // C_{j-3}
    const IntVec3& c2 = C[static_cast<size_t>(j) + 1];  // C_{j-2}
    const IntVec3& c1 = C[static_cast<size_t>(j) + 2];  // C_{j-1}
    C.push_back(c3 - c2 - c1.scaled(digits[j]));
  }
  return C;
}

std::vector<Rat> d_values(const RationalPair& pair, const DigitSequence& digits) {
  std::vector<IntVec3> C = c_vectors(digits);
  std::vector<Rat> d;
  d.reserve(C.size());
  for (const IntVec3& c : C) {
    d.push_back(Rat(c.x) + pair.alpha * Rat(c.y) + pair.beta * Rat(c.z));
  }
  return d;
}

std::vector<Interval> d_values(const RealPair& pair, const DigitSequence& digits) {
  std::vector<IntVec3> C = c_vectors(digits);
  std::vector<Interval> d;
  d.reserve(C.size());
  for (const IntVec3& c : C) {
    d.push_back(pair.alpha.mul_int(c.y) + pair.beta.mul_int(c.z).add_int(c.x));
  }
  return d;
}

DigitSequence digits_from_d(const PairRepr& pair, long depth) {
  if (depth < 0) throw OutOfDomain("depth must be nonnegative");
  DigitSequence out;
  auto res = pair.resolve();
  if (auto* r = std::get_if<RationalPair>(&res)) {
    if (sgn_of(r->beta) == Sgn::Neg || r->beta > r->alpha || r->alpha > 1) {
      throw OutOfDomain("pair outside the triangle 1 >= alpha >= beta >= 0");
    }
    Rat d3(1), d2 = r->alpha, d1 = r->beta;
    for (long i = 0; i < depth; ++i) {
      if (sgn_of(d1) == Sgn::Zero) {
        out.terminated = true;
        return out;
      }
      Int a = floor_div(d3 - d2, d1);
      if (sgn_of(a) == Sgn::Neg) throw OutOfDomain("negative digit: pair left the triangle");
      Rat d0 = d3 - d2 - Rat(a) * d1;
      out.digits.push_back(a);
      d3 = d2;
      d2 = d1;
      d1 = d0;
    }
    return out;
  }
  const auto& rp = std::get<RealPair>(res);
  const mpfr_prec_t prec = rp.alpha.precision();
  Interval d3 = Interval::of_int(1L, prec), d2 = rp.alpha, d1 = rp.beta;
  for (long i = 0; i < depth; ++i) {
    if (d1.is_exact_zero()) {
      out.terminated = true;
      return out;
    }
    if (d1.contains_zero()) {
      throw PrecisionExhausted("d indistinguishable from 0", out.digits.size(),
                               out.to_decimal_strings());
    }
    auto a = ((d3 - d2) / d1).certified_floor();
    if (!a.has_value()) {
      throw PrecisionExhausted("digit boundary unresolved at the stated precision",
                               out.digits.size(), out.to_decimal_strings());
    }
    if (sgn_of(*a) == Sgn::Neg) throw OutOfDomain("negative digit: pair left the triangle");
    Interval d0 = d3 - d2 - d1.mul_int(*a);
    out.digits.push_back(*a);
    d3 = d2;
    d2 = d1;
    d1 = d0;
  }
  return out;
}

std::vector<IntVec3> x_vectors(const DigitSequence& digits) {
  require_digits(digits);
  const long m = digits.size();
  std::vector<IntVec3> X;
  X.reserve(static_cast<size_t>(m) + 3);
  X.push_back(kE3);                       // X_{-3} = C_{-3} x C_{-2}
  X.push_back(kE1);                       // X_{-2} = C_{-2} x C_{-1}
  X.push_back({Int(1), Int(1), Int(0)});  // X_{-1}, independent of a_1
  for (long j = 0; j < m; ++j) {
    const IntVec3& x1 = X[static_cast<size_t>(j) + 2];  // X_{j-1}
    const IntVec3& x2 = X[static_cast<size_t>(j) + 1];  // X_{j-2}
    const IntVec3& x3 = X[static_cast<size_t>(j)];      // X_{j-3}
    X.push_back(x1 + x2.scaled(digits[j]) + x3);
  }
  return X;
}

std::vector<IntVec3> x_vectors_cross(const DigitSequence& digits) {
  std::vector<IntVec3> C = c_vectors(digits);
  const long m = digits.size();
  std::vector<IntVec3> X;
  X.reserve(static_cast<size_t>(m) + 3);
  for (long j = -3; j < m - 1; ++j) {
    X.push_back(cross(C[static_cast<size_t>(j + 3)], C[static_cast<size_t>(j + 4)]));
  }
  // Deepest level: C_m is not stored, but its digit term cancels under the
  // cross product, leaving X_{m-1} = C_{m-1} x (C_{m-3} - C_{m-2}).
  const IntVec3& cm1 = C[static_cast<size_t>(m + 2)];
  const IntVec3& cm3 = C[static_cast<size_t>(m)];
  const IntVec3& cm2 = C[static_cast<size_t>(m + 1)];
  X.push_back(cross(cm1, cm3 - cm2));
  return X;
}

NestedTriangle nested_triangle(const DigitSequence& digits) {
  std::vector<IntVec3> X = x_vectors(digits);
  const long n = digits.size() - 1;
  auto at = [&](long j) -> const IntVec3& { return X[static_cast<size_t>(j + 3)]; };
  try {
    return {hat(at(n - 1)), hat(at(n)), farey_sum({at(n), at(n - 2)})};
  } catch (const ZeroLeadCoordinate& e) {
    throw DegenerateTriangle(e.what());
  }
}

RationalPoint2 nested_representative(const DigitSequence& digits) {
  std::vector<IntVec3> X = x_vectors(digits);
  const long n = digits.size() - 1;
  auto at = [&](long j) -> const IntVec3& { return X[static_cast<size_t>(j + 3)]; };
  IntVec3 sum = at(n - 1) + at(n).scaled(Int(2)) + at(n - 2);
  try {
    return hat(sum);
  } catch (const ZeroLeadCoordinate& e) {
    throw DegenerateTriangle(e.what());
  }
}

ConvergentTable make_table(const PairRepr& pair, const DigitSequence& digits) {
  ConvergentTable t;
  t.digits = digits;
  t.C = c_vectors(digits);
  t.X = x_vectors(digits);
  auto res = pair.resolve();
  if (auto* r = std::get_if<RationalPair>(&res)) {
    t.d_rational = d_values(*r, digits);
  } else {
    t.d_real = d_values(std::get<RealPair>(res), digits);
  }
  return t;
}

LemmaBound lemma_bound(const PairRepr& pair, const DigitSequence& digits, long k,
                       mpfr_prec_t prec) {
  if (k < -3 || digits.size() < k + 2) {
    throw OutOfDomain("lemma_bound needs at least k + 2 digits");
  }
  ConvergentTable t = make_table(pair, digits);
  Int x = t.x_at(k + 1).x;
  if (sgn_of(x) == Sgn::Zero) throw ZeroX("x_{k+1} = 0");
  Int ax = ::abs(x);
  if (!t.d_rational.empty()) {
    Rat ratio = ::abs(t.d_at(k)) * Rat(ax);
    return {Real::of(ratio, prec, MPFR_RNDN), ratio <= 1};
  }
  Interval ratio = t.d_enc_at(k).abs().mul_int(ax);
  auto holds = ratio.less_equal(Interval::of_int(1L, ratio.precision()));
  if (!holds.has_value()) {
    throw PrecisionExhausted("lemma ratio straddles 1 at the stated precision");
  }
  return {ratio.midpoint(), *holds};
}

std::vector<int> word_from_digits(const DigitSequence& digits) {
  constexpr unsigned long kMaxLetters = 1000000ul;
  std::vector<int> word;
  unsigned long total = 0;
  for (const Int& a : digits.digits) {
    if (sgn_of(a) == Sgn::Neg) throw OutOfDomain("digits must be nonnegative");
    if (!a.fits_ulong_p() || a.get_ui() >= kMaxLetters ||
        (total += a.get_ui() + 1) > kMaxLetters) {
      throw Error("word too long to materialize");
    }
  }
  word.reserve(total);
  for (const Int& a : digits.digits) {
    for (unsigned long i = 0; i < a.get_ui(); ++i) word.push_back(1);
    word.push_back(0);
  }
  return word;
}

bool word_column_identity(const DigitSequence& digits, std::string* diag) {
  const long k = digits.size();
  IntMat3 W = word_product(word_from_digits(digits));
  std::vector<IntVec3> C = k > 0 ? c_vectors(digits)
                                 : std::vector<IntVec3>{kE1, kE2, kE3};
  auto c_at = [&](long j) -> const IntVec3& { return C[static_cast<size_t>(j + 3)]; };
  for (int col = 0; col < 3; ++col) {
    IntVec3 want = c_at(k - 3 + col);
    IntVec3 got = W.column(col);
    if (!(want == got)) {
      if (diag) {
        std::ostringstream os;
        os << "column " << col << " mismatch: got (" << got.x.get_str() << ","
           << got.y.get_str() << "," << got.z.get_str() << "), expected ("
           << want.x.get_str() << "," << want.y.get_str() << "," << want.z.get_str()
           << ")";
        *diag = os.str();
      }
      return false;
    }
  }
  return true;
}

}  // namespace tritherm
