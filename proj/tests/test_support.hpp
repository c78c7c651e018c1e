#pragma once

#include "margulis/sample.hpp"

namespace margulis::testing {

// Independent oracle for the cross product: solve <e_i, z> = det[e_i v w]
// coordinate by coordinate (the third pairing carries a sign).
inline Vec3 box_oracle(const Vec3& v, const Vec3& w) {
  Mat3 m;
  Vec3 z;
  for (int i = 0; i < 3; ++i) {
    m.col(0) = Vec3::Unit(i);
    m.col(1) = v;
    m.col(2) = w;
    const Real d = m.determinant();
    z(i) = i == 2 ? -d : d;
  }
  return z;
}

// Eigen-route oracle for the fixed vector: kernel of (g - id) by row cross
// products, normalized unit-spacelike, oriented against the given frame.
inline Vec3 x0_kernel_oracle(const Mat3& g, const Vec3& xm, const Vec3& xp) {
  const Mat3 a = g - Mat3::Identity();
  const Vec3 r0 = a.row(0), r1 = a.row(1), r2 = a.row(2);
  Vec3 best = r0.cross(r1);
  for (const Vec3& c : {Vec3(r0.cross(r2)), Vec3(r1.cross(r2))})
    if (c.squaredNorm() > best.squaredNorm()) best = c;
  Vec3 x0 = best / std::sqrt(std::abs(lorentz_dot(best, best)));
  Mat3 frame;
  frame.col(0) = x0;
  frame.col(1) = xm;
  frame.col(2) = xp;
  if (frame.determinant() < 0) x0 = -x0;
  return x0;
}

inline Real beta() { return std::sqrt(Real(2)) / 2; }

}  // namespace margulis::testing
