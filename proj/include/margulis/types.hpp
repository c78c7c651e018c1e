#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace margulis {

using Real = double;
using Vec3 = Eigen::Matrix<Real, 3, 1>;
using Mat3 = Eigen::Matrix<Real, 3, 3>;
using Mat4 = Eigen::Matrix<Real, 4, 4>;

/// Numerical knobs shared by every operation.  The defaults are tuned for
/// double precision on desk-scale inputs; pass a modified copy to tighten or
/// loosen a whole computation at once.
struct Config {
  Real eps_orth = 1e-10;         ///< J-orthogonality defect accepted on input maps
  Real eps_eig = 1e-10;          ///< eigenvector residual tolerance
  Real eps_trace = 1e-9;         ///< classification margin around trace 3
  Real eps_identity = 1e-10;     ///< max-abs distance to the identity
  Real eps_null = 1e-10;         ///< causal classification, relative to Euclidean norm
  Real near_parabolic_trace = 1e-4;  ///< trace window above 3 that flags conditioning
  Real eps_degenerate = 1e-8;    ///< coinciding boundary directions
  Real eps_repeller = 1e-8;      ///< forbidden start distance for projective iteration
  Real hyperbolic_margin = 1e-6; ///< trace excess required of hyperbolized words
  Real elliptic_orbit_margin = 1e-6;  ///< fixed-set invariance margin under elliptics
  Real schottky_margin = 1e-3;   ///< default angular gap between ping-pong intervals
  int schottky_power_max = 64;
  int schottky_bisection_iters = 40;
  int schottky_samples = 256;
  int hyperbolize_k_max = 32;
  int frame_refine_steps = 3;
  Real cond_guard = 1e12;        ///< condition-number trip wire for small solves
  Real radiant_tol = 1e-8;
  Real alpha_tol = 1e-8;         ///< invariant comparison tolerance between spectra
  Real residual_tol = 1e-7;      ///< conjugator acceptance threshold (operator norm)
  Real shared_linear_tol = 1e-10;    ///< equality of linear parts for translation recovery
  Real pipeline_linear_tol = 1e-6;   ///< relaxed variant used after numeric normalization
  Real rank_sv_cutoff = 1e-8;    ///< singular-value cutoff for cohomology ranks
  Real frame_match_tol = 1e-6;   ///< frame agreement demanded between aligned groups
  int asymptotic_n_max = 12;     ///< power range for the eta^n gamma^m comparisons
};

inline const Config& default_config() {
  static const Config cfg{};
  return cfg;
}

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotLorentz : Error { using Error::Error; };
struct NotHyperbolic : Error { using Error::Error; };
struct ZeroImage : Error { using Error::Error; };
struct DegenerateTriple : Error { using Error::Error; };
struct DegeneratePair : Error { using Error::Error; };
struct ParallelNoIntersect : Error { using Error::Error; };
struct StartAtRepeller : Error { using Error::Error; };
struct UnknownGenerator : Error { using Error::Error; };
struct FailedToSeparate : Error { using Error::Error; };
struct HyperbolizationFailed : Error { using Error::Error; };
struct NonElementaryViolated : Error { using Error::Error; };
struct ElementaryGroup : Error { using Error::Error; };
struct RadiantInput : Error { using Error::Error; };
struct SharedLinearPartViolated : Error { using Error::Error; };
struct NonHyperbolicWord : Error { using Error::Error; };
struct NotParallel : Error { using Error::Error; };
struct MalformedInput : Error { using Error::Error; };

}  // namespace margulis
