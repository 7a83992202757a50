#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tritherm {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// The pair lies outside the closed triangle 1 >= alpha >= beta >= 0.
class OutOfDomain : public Error {
 public:
  explicit OutOfDomain(const std::string& msg) : Error(msg) {}
};

// The orbit landed on the interval beta = 0; no further digit exists.
class Terminated : public Error {
 public:
  explicit Terminated(const std::string& msg) : Error(msg) {}
};

// A certified comparison straddled a decision boundary at the stated
// precision. Carries how many digits were certified before the failure so
// callers can still report the trustworthy prefix.
class PrecisionExhausted : public Error {
 public:
  explicit PrecisionExhausted(const std::string& msg, std::size_t certified = 0,
                              std::vector<std::string> prefix = {})
      : Error(msg), certified_digits_(certified), certified_prefix_(std::move(prefix)) {}
  std::size_t certified_digits() const { return certified_digits_; }
  // Decimal renderings of the digits certified before the failure.
  const std::vector<std::string>& certified_prefix() const { return certified_prefix_; }

 private:
  std::size_t certified_digits_;
  std::vector<std::string> certified_prefix_;
};

// Projective operations (hat, Farey sum, area) need nonzero lead coordinates.
class ZeroLeadCoordinate : public Error {
 public:
  explicit ZeroLeadCoordinate(const std::string& msg) : Error(msg) {}
};

class DegenerateTriangle : public Error {
 public:
  explicit DegenerateTriangle(const std::string& msg) : Error(msg) {}
};

// x_{k+1} = 0: the lemma ratio is undefined at this level.
class ZeroX : public Error {
 public:
  explicit ZeroX(const std::string& msg) : Error(msg) {}
};

// A partition denominator is certified zero (or indistinguishable from zero
// at the working precision). `word()` names the offending 0/1 word.
class PoleError : public Error {
 public:
  PoleError(const std::string& msg, std::string word)
      : Error(msg), word_(std::move(word)) {}
  const std::string& word() const { return word_; }

 private:
  std::string word_;
};

// p + alpha q + beta r = 0 exactly: the pair is rationally dependent and the
// Diophantine hypothesis is unsatisfiable. Carries the reduced witness.
class ExactZero : public Error {
 public:
  ExactZero(const std::string& msg, std::string witness)
      : Error(msg), witness_(std::move(witness)) {}
  const std::string& witness() const { return witness_; }

 private:
  std::string witness_;
};

}  // namespace tritherm
