#pragma once

#include <string>
#include <vector>

#include "tritherm/digits.hpp"
#include "tritherm/linalg.hpp"
#include "tritherm/pair.hpp"

namespace tritherm {

// Index convention used throughout: lists run from subscript -3, so element
// [j + 3] holds the vector or value with subscript j. With m digits the
// deepest stored subscript is m - 1; digit a_1 produces subscript 0 via
//   C_j = C_{j-3} - C_{j-2} - a_{j+1} * C_{j-1}.
struct ConvergentTable {
  DigitSequence digits;
  std::vector<IntVec3> C;
  std::vector<IntVec3> X;
  std::vector<Rat> d_rational;    // filled for exact pairs
  std::vector<Interval> d_real;   // filled for certified pairs

  long top() const { return static_cast<long>(C.size()) - 4; }  // deepest subscript
  const IntVec3& c_at(long j) const { return C[static_cast<size_t>(j + 3)]; }
  const IntVec3& x_at(long j) const { return X[static_cast<size_t>(j + 3)]; }
  const Rat& d_at(long j) const { return d_rational[static_cast<size_t>(j + 3)]; }
  const Interval& d_enc_at(long j) const { return d_real[static_cast<size_t>(j + 3)]; }
};

// C_{-3} .. C_{m-1}: seeds e1, e2, e3, then the three-term recurrence.
std::vector<IntVec3> c_vectors(const DigitSequence& digits);

// d_j = (1, alpha, beta) . C_j, same index range as c_vectors.
std::vector<Rat> d_values(const RationalPair& pair, const DigitSequence& digits);
std::vector<Interval> d_values(const RealPair& pair, const DigitSequence& digits);

// Digit extraction straight from the d recurrence: a_{j+1} is the unique
// nonnegative integer with d_{j-3} - d_{j-2} - a_{j+1} d_{j-1} >= 0 >
// d_{j-3} - d_{j-2} - (a_{j+1}+1) d_{j-1}. Must agree with the orbit digits.
DigitSequence digits_from_d(const PairRepr& pair, long depth);

// X_{-3} .. X_{m-1} by the additive recurrence
// X_j = X_{j-1} + a_{j+1} X_{j-2} + X_{j-3} (the fast path).
std::vector<IntVec3> x_vectors(const DigitSequence& digits);

// The defining cross products X_j = C_j x C_{j+1}, with the deepest entry
// through the cancellation identity X_j = C_j x (C_{j-2} - C_{j-1}).
// Retained as the oracle for x_vectors.
std::vector<IntVec3> x_vectors_cross(const DigitSequence& digits);

// Vertices of the deepest nested triangle for m digits (level n = m - 1):
// hat(X_{n-1}), hat(X_n), and the Farey sum of X_n and X_{n-2}.
struct NestedTriangle {
  RationalPoint2 v0, v1, v2;
};
NestedTriangle nested_triangle(const DigitSequence& digits);

// Farey sum of all three vertex vectors: a point strictly interior to the
// deepest triangle, used as its canonical representative.
RationalPoint2 nested_representative(const DigitSequence& digits);

ConvergentTable make_table(const PairRepr& pair, const DigitSequence& digits);

// |d_k| * |x_{k+1}| and the truth of |d_k| <= 1 / |x_{k+1}|.
// Needs k + 2 digits; x_{k+1} = 0 raises ZeroX.
struct LemmaBound {
  Real ratio;
  bool holds;
};
LemmaBound lemma_bound(const PairRepr& pair, const DigitSequence& digits, long k,
                       mpfr_prec_t prec);

// The word (1^{a_1}, 0, 1^{a_2}, 0, ..., 1^{a_k}, 0).
std::vector<int> word_from_digits(const DigitSequence& digits);

// Checks that word_from_digits yields a product with columns
// (C_{k-3}, C_{k-2}, C_{k-1}). False (with a diagnostic) on mismatch.
bool word_column_identity(const DigitSequence& digits, std::string* diag = nullptr);

}  // namespace tritherm
