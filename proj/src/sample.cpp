#include "margulis/sample.hpp"

#include <cmath>
#include <numbers>

namespace margulis {

Vec3 random_vec(Rng& rng, Real scale) {
  return Vec3(rng.uniform(-scale, scale), rng.uniform(-scale, scale),
              rng.uniform(-scale, scale));
}

Vec3 random_future_unit(Rng& rng) {
  // timelike direction: radial part strictly smaller than height
  const Real phi = rng.uniform(0, 2 * std::numbers::pi_v<Real>);
  const Real r = rng.uniform(0, Real(0.9));
  Vec3 v(r * std::cos(phi), r * std::sin(phi), Real(1));
  return v.normalized();
}

LorentzMap random_lorentz(Rng& rng, bool allow_reflection,
                          bool allow_time_reversal, Real boost_cap) {
  const Real a = rng.uniform(0, 2 * std::numbers::pi_v<Real>);
  const Real b = rng.uniform(0, 2 * std::numbers::pi_v<Real>);
  const Real t = rng.uniform(-boost_cap, boost_cap);
  LorentzMap g = rotation_map(a) * boost_map(t) * rotation_map(b);
  if (allow_reflection && rng.coin()) {
    LorentzMap refl;
    refl.m = Mat3::Identity();
    refl.m(1, 1) = -1;
    refl.det_sign = -1;
    g = refl * g;
  }
  if (allow_time_reversal && rng.coin()) {
    LorentzMap flip;
    flip.m = Mat3::Identity();
    flip.m(1, 1) = -1;
    flip.m(2, 2) = -1;
    flip.time_sign = -1;
    g = flip * g;
  }
  return g;
}

AffineIso random_affine(Rng& rng, bool allow_reflection, bool allow_time_reversal,
                        Real boost_cap, Real trans_scale) {
  return AffineIso{
      random_lorentz(rng, allow_reflection, allow_time_reversal, boost_cap),
      random_vec(rng, trans_scale)};
}

LorentzMap random_hyperbolic(Rng& rng, Real lam_lo, Real lam_hi) {
  const Real lam = rng.uniform(lam_lo, lam_hi);
  const LorentzMap f = random_lorentz(rng);
  return f * boost_map(-std::log(lam)) * f.inverse();
}

AffineIso random_hyperbolic_affine(Rng& rng, Real trans_scale) {
  return AffineIso{random_hyperbolic(rng), random_vec(rng, trans_scale)};
}

Presentation random_schottky_linear(const SchottkyParams& params, Rng& rng,
                                    const Config& cfg) {
  if (params.rank < 1) throw MalformedInput("random_schottky_linear: rank >= 1");
  for (int attempt = 0; attempt < params.attempts; ++attempt) {
    std::vector<Real> ts, thetas;
    for (int i = 0; i < params.rank; ++i) {
      ts.push_back(rng.uniform(params.t_min, params.t_max));
      thetas.push_back(i * std::numbers::pi_v<Real> / params.rank +
                       rng.uniform(-params.theta_jitter, params.theta_jitter));
    }
    for (int p = 1; p <= cfg.schottky_power_max; ++p) {
      if (std::exp(-p * params.t_min) < params.lambda_floor) break;
      std::vector<LorentzMap> gens;
      for (int i = 0; i < params.rank; ++i) {
        const LorentzMap r = rotation_map(thetas[static_cast<size_t>(i)]);
        gens.push_back(r * boost_map(p * ts[static_cast<size_t>(i)]) * r.inverse());
      }
      bool contraction_ok = true;
      for (const auto& g : gens)
        contraction_ok = contraction_ok &&
                         null_frame(g, cfg).lambda >= params.lambda_floor;
      if (!contraction_ok) break;
      if (verify_schottky(gens, params.margin, cfg))
        return linear_presentation(std::move(gens));
    }
  }
  throw FailedToSeparate("random_schottky_linear: no verified configuration found");
}

Presentation random_schottky_deformation(const SchottkyParams& params, Rng& rng,
                                         const Config& cfg) {
  Presentation p = random_schottky_linear(params, rng, cfg);
  for (auto& g : p.gens) g.trans = random_vec(rng, params.cocycle_scale);
  return p;
}

}  // namespace margulis
