#include "tritherm/linalg.hpp"

#include "tritherm/errors.hpp"

namespace tritherm {

IntVec3 cross(const IntVec3& a, const IntVec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

IntMat3 IntMat3::identity() {
  IntMat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r.m[i][j] = (i == j) ? 1 : 0;
  return r;
}

IntMat3 IntMat3::from_rows(const IntVec3& r0, const IntVec3& r1, const IntVec3& r2) {
  IntMat3 r;
  r.m[0] = {r0.x, r0.y, r0.z};
  r.m[1] = {r1.x, r1.y, r1.z};
  r.m[2] = {r2.x, r2.y, r2.z};
  return r;
}

IntMat3 IntMat3::from_columns(const IntVec3& c0, const IntVec3& c1, const IntVec3& c2) {
  IntMat3 r;
  r.m[0] = {c0.x, c1.x, c2.x};
  r.m[1] = {c0.y, c1.y, c2.y};
  r.m[2] = {c0.z, c1.z, c2.z};
  return r;
}

IntVec3 IntMat3::column(int j) const { return {m[0][j], m[1][j], m[2][j]}; }
IntVec3 IntMat3::row(int i) const { return {m[i][0], m[i][1], m[i][2]}; }

IntMat3 IntMat3::operator*(const IntMat3& o) const {
  IntMat3 r;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      r.m[i][j] = m[i][0] * o.m[0][j] + m[i][1] * o.m[1][j] + m[i][2] * o.m[2][j];
    }
  }
  return r;
}

Int IntMat3::det() const {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

const IntMat3& generator(int sigma) {
  static const IntMat3 a0 =
      IntMat3::from_rows({Int(0), Int(0), Int(1)}, {Int(1), Int(0), Int(-1)},
                         {Int(0), Int(1), Int(0)});
  static const IntMat3 a1 =
      IntMat3::from_rows({Int(1), Int(0), Int(0)}, {Int(0), Int(1), Int(0)},
                         {Int(-1), Int(0), Int(1)});
  if (sigma == 0) return a0;
  if (sigma == 1) return a1;
  throw Error("generator: sigma must be 0 or 1");
}

IntMat3 word_product(const std::vector<int>& word) {
  IntMat3 r = IntMat3::identity();
  for (int sigma : word) r = r * generator(sigma);
  return r;
}

Rat hs_product(const Rat& alpha, const Rat& beta, const IntMat3& A) {
  IntVec3 c = A.column(2);
  return Rat(c.x) + alpha * Rat(c.y) + beta * Rat(c.z);
}

Interval hs_product(const Interval& alpha, const Interval& beta, const IntMat3& A) {
  IntVec3 c = A.column(2);
  return alpha.mul_int(c.y) + beta.mul_int(c.z).add_int(c.x);
}

RationalPoint2 hat(const IntVec3& v) {
  if (sgn_of(v.x) == Sgn::Zero) {
    throw ZeroLeadCoordinate("hat: lead coordinate is zero");
  }
  Rat u(v.y, v.x), w(v.z, v.x);
  u.canonicalize();
  w.canonicalize();
  return {u, w};
}

RationalPoint2 farey_sum(const std::vector<IntVec3>& vs) {
  if (vs.size() != 2 && vs.size() != 3) {
    throw Error("farey_sum takes two or three vectors");
  }
  IntVec3 s;
  for (const IntVec3& v : vs) s = s + v;
  if (sgn_of(s.x) == Sgn::Zero) {
    throw ZeroLeadCoordinate("farey_sum: lead coordinates sum to zero");
  }
  return hat(s);
}

Rat projective_triangle_area(const IntMat3& columns) {
  const Int& a = columns.m[0][0];
  const Int& b = columns.m[0][1];
  const Int& c = columns.m[0][2];
  if (sgn_of(a) == Sgn::Zero || sgn_of(b) == Sgn::Zero || sgn_of(c) == Sgn::Zero) {
    throw ZeroLeadCoordinate("projective_triangle_area: zero lead coordinate");
  }
  Rat r(columns.det(), a * b * c);
  r.canonicalize();
  return r;
}

}  // namespace tritherm
