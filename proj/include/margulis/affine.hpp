#pragma once

#include <optional>
#include <span>
#include <vector>

#include "margulis/isometry.hpp"

namespace margulis {

/// Affine isometry x -> linear(x) + trans, in the chart of a fixed origin.
struct AffineIso {
  LorentzMap linear;
  Vec3 trans = Vec3::Zero();

  static AffineIso identity() { return AffineIso{}; }

  Vec3 operator()(const Vec3& x) const { return linear.m * x + trans; }

  AffineIso operator*(const AffineIso& rhs) const {
    return AffineIso{linear * rhs.linear, trans + linear.m * rhs.trans};
  }

  AffineIso inverse() const {
    const LorentzMap li = linear.inverse();
    return AffineIso{li, -(li.m * trans)};
  }

  /// 4x4 homogeneous representation, used for operator-norm residuals.
  Mat4 homogeneous() const;
};

AffineIso affine_pow(const AffineIso& g, long n);

inline AffineIso translation_iso(const Vec3& v) {
  return AffineIso{LorentzMap{}, v};
}

inline AffineIso conjugate(const AffineIso& by, const AffineIso& g) {
  return by * g * by.inverse();
}

/// The invariant spacelike line of a hyperbolic affine isometry, stored as a
/// point together with the unit-spacelike direction (the frame vector x0 of
/// the linear part).  The point is the unique one in the span of the null
/// eigen-directions.
struct InvariantLine {
  Vec3 point;
  Vec3 dir;
};

InvariantLine invariant_line(const AffineIso& g, const Config& cfg = default_config());

/// Signed translation length along the invariant line: <g(x) - x, x0> for
/// any point x, evaluated at the origin.  Defined for hyperbolic elements.
Real margulis_invariant(const AffineIso& g, const Config& cfg = default_config());

struct RadiancePoint {
  Vec3 point;
  Real residual;
};

/// Least-squares solve of the stacked fixed-point system (I - g_i) x = v_i.
RadiancePoint radiant_least_squares(std::span<const AffineIso> gens);

/// Returns the common fixed point when the stacked residual stays below tol,
/// nothing otherwise.
std::optional<Vec3> is_radiant(std::span<const AffineIso> gens, Real tol);

/// v - g(v), the translational change of a deformation under conjugation by
/// the translation v.
inline Vec3 coboundary(const Vec3& v, const LorentzMap& g) {
  return v - g.m * v;
}

}  // namespace margulis
