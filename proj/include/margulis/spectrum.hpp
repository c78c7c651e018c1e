#pragma once

#include <utility>

#include "margulis/group.hpp"

namespace margulis {

struct SpectrumEntry {
  Word word;
  Real alpha = 0;
  bool skipped = false;  ///< word not hyperbolic, invariant undefined
};

/// Marked spectrum: the invariant of every hyperbolic word, in the
/// deterministic enumeration order.
struct Spectrum {
  std::vector<SpectrumEntry> entries;
};

/// Invariants of all reduced words up to max_len letters.  Honors the
/// MARGULIS_THREADS cap for its internal parallel map; output order does not
/// depend on the thread count.
Spectrum marked_spectrum(const Presentation& p, int max_len,
                         const Config& cfg = default_config());

/// Rows express the invariant of each word as a linear form in the 3n
/// translation coordinates.  Block j of a row pairs with gen_trans[j] under
/// the Lorentzian product (see alpha_row_apply); for a single-generator word
/// the block is the frame vector x0 of that generator.  Throws
/// NonHyperbolicWord when a word has no invariant.
Eigen::MatrixXd alpha_functional_matrix(std::span<const LorentzMap> gens,
                                        std::span<const Word> words,
                                        const Config& cfg = default_config());

Real alpha_row_apply(const Eigen::RowVectorXd& row, const Cocycle& u);

/// The common limit of the fixed vectors x0(h^n g^m):
/// -(1/<x-(g), x+(h)>) x-(g) box x+(h), unit-spacelike.  Throws
/// DegeneratePair when the two boundary directions coincide.
Vec3 x0_limit(const LorentzMap& g, const LorentzMap& h,
              const Config& cfg = default_config());

/// Ingredients of the closed-form growth of alpha(eta^n gamma^m).
struct AsymptoticData {
  Vec3 x0_gh;
  Real kappa = 0;
  Real lambda_g = 0;
  Real lambda_h = 0;
  Real alpha_g = 0;
  Real alpha_h = 0;
  Real inner_xm_h = 0;  ///< <x-(h), x0(g,h)>
};

/// Geometric route: intersects the invariant line of gamma with the plane
/// through the invariant line of eta spanned by x-(h), and decomposes the
/// offset along x-(h).
AsymptoticData kappa_data(const AffineIso& gamma, const AffineIso& eta,
                          const Config& cfg = default_config());

/// m*alpha(gamma) + n*alpha(eta) + kappa (lambda_h^n - 1) <x-(h), x0(g,h)>.
Real asymptotic_alpha(const AsymptoticData& data, int m, int n);

/// alpha(eta^n gamma^m) evaluated through a compensated (quad) product, so
/// that residuals against the asymptote stay meaningful for long words.
Real alpha_power_word(const AffineIso& gamma, const AffineIso& eta, int n, int m);

/// Spectral route to kappa: inverts the exact displacement decomposition of
/// alpha(eta^n gamma^m) at finite (n, m) using the word's own fixed vector.
/// Cross-validates the geometric kappa; the identity is exact, so small
/// powers suffice and are numerically kindest.
Real estimate_kappa(const AffineIso& gamma, const AffineIso& eta, int n = 4,
                    int m = 4, const Config& cfg = default_config());

/// Distances d(g~^k(v), x+(g)) for k = 0..n_max under the normalized action.
/// Throws StartAtRepeller when v starts on the repelling ray.
std::vector<std::pair<int, Real>> convergence_report(
    const LorentzMap& g, const Vec3& v, int n_max,
    const Config& cfg = default_config());

/// (max of the null eigenvector distances, distance of the fixed vectors).
std::pair<Real, Real> frame_distance_report(const LorentzMap& g,
                                            const LorentzMap& h,
                                            const Config& cfg = default_config());

}  // namespace margulis
