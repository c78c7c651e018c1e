#pragma once

#include "margulis/lorentz.hpp"

namespace margulis {

/// A linear isometry of the form, together with its orientation and
/// time-orientation signs.  Instances built by from_matrix are validated;
/// products and inverses propagate the flags without re-checking.
struct LorentzMap {
  Mat3 m = Mat3::Identity();
  int det_sign = 1;
  int time_sign = 1;

  /// Validates m^T J m = J against cfg.eps_orth.
  static LorentzMap from_matrix(const Mat3& m, const Config& cfg = default_config());

  /// Membership in the identity component SO(2,1)^0.
  bool restricted() const { return det_sign > 0 && time_sign > 0; }

  /// Form defect scaled by the squared magnitude, so products of strongly
  /// contracting elements are judged fairly.
  Real orthogonality_defect() const;

  LorentzMap inverse() const;
  LorentzMap operator*(const LorentzMap& rhs) const;
  Vec3 operator()(const Vec3& v) const { return m * v; }
};

enum class IsometryClass { Identity, Hyperbolic, Parabolic, Elliptic };

/// Classification by trace, valid on SO(2,1)^0.  Throws NotLorentz when the
/// flags say the map is outside the identity component.
IsometryClass classify(const LorentzMap& g, const Config& cfg = default_config());

bool is_hyperbolic(const LorentzMap& g, const Config& cfg = default_config());

/// One-parameter subgroup fixing e1; hyperbolic for t != 0, eigenvalues
/// e^t, 1, e^-t on [0,1,1], e1, [0,-1,1].
LorentzMap boost_map(Real t);

/// Rotation of the (x1,x2)-plane fixing e3; elliptic away from 2*pi*Z.
LorentzMap rotation_map(Real theta);

/// Eigenbasis of a hyperbolic element: xm and xp are the future-pointing
/// Euclidean-unit eigenvectors for the eigenvalues lambda and 1/lambda,
/// x0 is the unit-spacelike fixed vector making [x0 | xm | xp] positively
/// oriented.  near_parabolic reports trace within the conditioning window.
struct NullFrame {
  Vec3 x0;
  Vec3 xm;
  Vec3 xp;
  Real lambda = 0;
  bool near_parabolic = false;
};

NullFrame null_frame(const LorentzMap& g, const Config& cfg = default_config());

/// Rebuilds the hyperbolic element with the given eigen-data; the fixed
/// vector is derived from xm and xp.  Inputs are renormalized to exact null
/// directions first.  Requires 0 < lambda < 1 and distinct directions.
LorentzMap from_frame(const Vec3& xm, const Vec3& xp, Real lambda,
                      const Config& cfg = default_config());

/// Scales a future-pointing vector onto the exactly-null Euclidean-unit ray
/// with the same boundary direction.
Vec3 null_normalize(const Vec3& v);

/// The element of O(2,1) (possibly orientation-reversing, always preserving
/// the future cone) sending the three source rays to the three target rays.
/// Unique; throws DegenerateTriple when two directions coincide.
LorentzMap triple_conjugator(const std::array<Vec3, 3>& src,
                             const std::array<Vec3, 3>& dst,
                             const Config& cfg = default_config());

/// The induced map on future-pointing Euclidean-unit vectors,
/// v -> g(v)/|g(v)|.
Vec3 projective_action(const LorentzMap& g, const Vec3& v,
                       const Config& cfg = default_config());

}  // namespace margulis
