#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "tritherm/numeric.hpp"

namespace tritherm {

struct IntVec3 {
  Int x, y, z;

  IntVec3() : x(0), y(0), z(0) {}
  IntVec3(Int a, Int b, Int c) : x(std::move(a)), y(std::move(b)), z(std::move(c)) {}

  bool operator==(const IntVec3& o) const { return x == o.x && y == o.y && z == o.z; }
  IntVec3 operator+(const IntVec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  IntVec3 operator-(const IntVec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  IntVec3 scaled(const Int& k) const { return {k * x, k * y, k * z}; }
};

IntVec3 cross(const IntVec3& a, const IntVec3& b);

// Row-major 3x3 over unbounded integers.
struct IntMat3 {
  std::array<std::array<Int, 3>, 3> m;

  static IntMat3 identity();
  static IntMat3 from_rows(const IntVec3& r0, const IntVec3& r1, const IntVec3& r2);
  static IntMat3 from_columns(const IntVec3& c0, const IntVec3& c1, const IntVec3& c2);

  IntVec3 column(int j) const;
  IntVec3 row(int i) const;
  IntMat3 operator*(const IntMat3& o) const;
  bool operator==(const IntMat3& o) const { return m == o.m; }
  Int det() const;
};

// The planar point (b/a, c/a) that a nonzero-lead integer vector projects to.
struct RationalPoint2 {
  Rat u, v;
  bool operator==(const RationalPoint2& o) const { return u == o.u && v == o.v; }
};

// The two generators; sigma selects which.
const IntMat3& generator(int sigma);

// A_{sigma_1} ... A_{sigma_N}; the empty word gives the identity.
IntMat3 word_product(const std::vector<int>& word);

// (1, alpha, beta) dotted with the third column of A, exact for rationals and
// enclosure-valued for certified reals.
Rat hs_product(const Rat& alpha, const Rat& beta, const IntMat3& A);
Interval hs_product(const Interval& alpha, const Interval& beta, const IntMat3& A);

// (v.y / v.x, v.z / v.x); the lead coordinate must be nonzero.
RationalPoint2 hat(const IntVec3& v);

// hat of the componentwise sum. Two or three summands.
RationalPoint2 farey_sum(const std::vector<IntVec3>& vs);

// det(A) / (a11 * a12 * a13) with A read as three column vectors; twice the
// Euclidean area of the projected triangle.
Rat projective_triangle_area(const IntMat3& columns);

}  // namespace tritherm
