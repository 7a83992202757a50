#pragma once

#include <string>
#include <vector>

#include "tritherm/numeric.hpp"

namespace tritherm {

// A triangle sequence (a_1, a_2, ...). `terminated` means the orbit hit the
// beta = 0 locus immediately after the listed digits; an untruncated infinite
// sequence is represented by terminated = false.
struct DigitSequence {
  std::vector<Int> digits;
  bool terminated = false;

  long size() const { return static_cast<long>(digits.size()); }
  bool empty() const { return digits.empty(); }
  const Int& operator[](long i) const { return digits[static_cast<size_t>(i)]; }

  bool operator==(const DigitSequence& o) const {
    return digits == o.digits && terminated == o.terminated;
  }

  DigitSequence prefix(long n) const {
    DigitSequence p;
    long take = n < size() ? n : size();
    p.digits.assign(digits.begin(), digits.begin() + take);
    p.terminated = terminated && take == size();
    return p;
  }

  // Digits exceed native widths routinely, so the wire form is decimal strings.
  std::vector<std::string> to_decimal_strings() const {
    std::vector<std::string> out;
    out.reserve(digits.size());
    for (const Int& d : digits) out.push_back(d.get_str());
    return out;
  }
};

inline DigitSequence make_digits(std::initializer_list<long> ds,
                                 bool terminated = false) {
  DigitSequence s;
  for (long d : ds) s.digits.emplace_back(d);
  s.terminated = terminated;
  return s;
}

}  // namespace tritherm
