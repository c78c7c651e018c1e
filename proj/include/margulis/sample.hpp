#pragma once

#include <cstdint>
#include <random>

#include "margulis/group.hpp"

namespace margulis {

/// Seeded generator with library-independent uniform mapping, so identical
/// seeds give identical draws on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t bits() { return eng_(); }

  /// Uniform in [lo, hi).
  Real uniform(Real lo, Real hi) {
    const Real u = static_cast<Real>(bits() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }

  long uniform_int(long lo, long hi) {
    return lo + static_cast<long>(bits() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  bool coin() { return (bits() & 1u) != 0; }

 private:
  std::mt19937_64 eng_;
};

Vec3 random_vec(Rng& rng, Real scale);

/// Random point of U: future-pointing Euclidean-unit timelike vector.
Vec3 random_future_unit(Rng& rng);

/// Bounded random element: rotation * boost * rotation, optionally composed
/// with a space reflection and/or the antipodal flip to reach the other
/// components of the isometry group.
LorentzMap random_lorentz(Rng& rng, bool allow_reflection = false,
                          bool allow_time_reversal = false, Real boost_cap = 1.5);

AffineIso random_affine(Rng& rng, bool allow_reflection = false,
                        bool allow_time_reversal = false, Real boost_cap = 1.5,
                        Real trans_scale = 1.0);

/// Hyperbolic element with eigenvalue in [lam_lo, lam_hi] and a random axis
/// of bounded conditioning.
LorentzMap random_hyperbolic(Rng& rng, Real lam_lo = 0.2, Real lam_hi = 0.8);

AffineIso random_hyperbolic_affine(Rng& rng, Real trans_scale = 1.0);

struct SchottkyParams {
  int rank = 2;
  Real t_min = 0.6931471805599453;  // log 2
  Real t_max = 1.791759469228055;   // log 6
  Real theta_jitter = 0.15;
  Real cocycle_scale = 0.4;
  Real margin = 1e-3;
  int attempts = 16;
  // Draws whose escalated generators contract harder than this are redrawn;
  // below it, double-precision conjugates stop being spectrally faithful.
  Real lambda_floor = 0.01;
};

/// Verified Schottky linear group: axes spread at pi/rank spacing with
/// jitter, boost strengths drawn from [t_min, t_max], generators raised to
/// the first power for which the interval test passes.
Presentation random_schottky_linear(const SchottkyParams& params, Rng& rng,
                                    const Config& cfg = default_config());

/// Same, with a random cocycle of the given scale attached.
Presentation random_schottky_deformation(const SchottkyParams& params, Rng& rng,
                                         const Config& cfg = default_config());

}  // namespace margulis
