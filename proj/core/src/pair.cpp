#include "tritherm/pair.hpp"

#include <cctype>
#include <sstream>

#include "tritherm/construct.hpp"
#include "tritherm/errors.hpp"

namespace tritherm {

PairRepr PairRepr::from_decimal(const Rat& alpha, const Rat& beta, long input_bits,
                                mpfr_prec_t prec) {
  if (input_bits < 1) throw OutOfDomain("decimal pairs need a stated input precision");
  return PairRepr(RealPair{Interval::of_rat_pm(alpha, input_bits, prec),
                           Interval::of_rat_pm(beta, input_bits, prec)});
}

PairRepr PairRepr::from_digits(DigitSequence digits, long depth) {
  if (digits.empty()) throw OutOfDomain("digit-defined pair needs at least one digit");
  if (depth <= 0 || depth > digits.size()) depth = digits.size();
  return PairRepr(DigitDefinedPair{
      std::make_shared<const DigitSequence>(std::move(digits)), depth});
}

std::variant<RationalPair, RealPair> PairRepr::resolve() const {
  if (auto* r = std::get_if<RationalPair>(&v_)) return *r;
  if (auto* r = std::get_if<RealPair>(&v_)) return *r;
  const auto& dd = std::get<DigitDefinedPair>(v_);
  Enclosure enc = pair_from_digits(dd.digits->prefix(dd.depth));
  return RationalPair{enc.representative.u, enc.representative.v};
}

std::string PairRepr::describe() const {
  std::ostringstream os;
  if (auto* r = std::get_if<RationalPair>(&v_)) {
    os << r->alpha.get_str() << "," << r->beta.get_str();
  } else if (auto* r = std::get_if<RealPair>(&v_)) {
    os << "real pair at " << r->alpha.precision() << " bits";
  } else {
    const auto& dd = std::get<DigitDefinedPair>(v_);
    os << "digit-defined pair, depth " << dd.depth;
  }
  return os.str();
}

PairRepr cubic_fixed_point(mpfr_prec_t prec) {
  Interval q = cubic_root_enclosure(prec);
  return PairRepr(RealPair{q, q * q});
}

Rat parse_rat(const std::string& text) {
  if (text.empty()) throw OutOfDomain("empty number");
  std::string t = text;
  if (t.find('/') != std::string::npos) {
    Rat r;
    if (mpq_set_str(r.get_mpq_t(), t.c_str(), 10) != 0) {
      throw OutOfDomain("not a rational: '" + text + "'");
    }
    if (sgn_of(r.get_den()) == Sgn::Zero) {
      throw OutOfDomain("zero denominator: '" + text + "'");
    }
    r.canonicalize();
    return r;
  }
  // Decimal with optional exponent: digits [. digits] [e[+-]digits].
  bool neg = false;
  size_t i = 0;
  if (t[i] == '+' || t[i] == '-') neg = (t[i++] == '-');
  std::string mantissa;
  long frac_digits = 0;
  bool seen_dot = false, seen_digit = false;
  long exp10 = 0;
  for (; i < t.size(); ++i) {
    char c = t[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mantissa.push_back(c);
      if (seen_dot) ++frac_digits;
      seen_digit = true;
    } else if (c == '.' && !seen_dot) {
      seen_dot = true;
    } else if ((c == 'e' || c == 'E') && seen_digit) {
      exp10 = std::stol(t.substr(i + 1));
      break;
    } else {
      throw OutOfDomain("not a number: '" + text + "'");
    }
  }
  if (!seen_digit) throw OutOfDomain("not a number: '" + text + "'");
  Int num(mantissa.empty() ? "0" : mantissa);
  if (neg) num = -num;
  long net = exp10 - frac_digits;
  Int pow10(1);
  mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(net < 0 ? -net : net));
  Rat r = net >= 0 ? Rat(num * pow10) : Rat(num, pow10);
  r.canonicalize();
  return r;
}

PairRepr parse_pair(const std::string& text, long input_bits, mpfr_prec_t prec) {
  if (text == "cubic-fixed-point") return cubic_fixed_point(prec);
  auto comma = text.find(',');
  if (comma == std::string::npos) {
    throw OutOfDomain("pair must be 'alpha,beta' or a named constant");
  }
  std::string a = text.substr(0, comma), b = text.substr(comma + 1);
  bool decimal = a.find('.') != std::string::npos || b.find('.') != std::string::npos ||
                 a.find('e') != std::string::npos || b.find('e') != std::string::npos;
  Rat alpha = parse_rat(a), beta = parse_rat(b);
  if (!decimal) return PairRepr::from_rational(alpha, beta);
  return PairRepr::from_decimal(alpha, beta, input_bits, prec);
}

}  // namespace tritherm
