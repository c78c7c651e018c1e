#pragma once

#include <optional>

#include "margulis/spectrum.hpp"

namespace margulis {

enum class Verdict { Conjugate, Mismatch, Inconclusive };

/// Outcome of a reconstruction run.  When the verdict is Conjugate, the
/// affine map x -> f(x) + tau carries the second group onto the first,
/// generator by generator, within the stated residual (operator norm on the
/// homogeneous representation).
struct ConjugacyCertificate {
  LorentzMap f;
  Vec3 tau = Vec3::Zero();
  Real residual = 0;
  long words_checked = 0;
  Verdict verdict = Verdict::Inconclusive;
  std::optional<Word> witness;  ///< set on Mismatch
  Real witness_dalpha = 0;
};

const char* verdict_name(Verdict v);

/// Identical-linear-part case: solves v - g_i(v) = u1(g_i) - u2(g_i) in the
/// least-squares sense and certifies the translation.  Throws
/// SharedLinearPartViolated when the linear parts differ beyond tolerance,
/// ElementaryGroup when the solution is not unique.
ConjugacyCertificate weak_recover_translation(const Presentation& p1,
                                              const Presentation& p2, Real tol,
                                              const Config& cfg = default_config());

/// Rank of the invariant functional on translational deformation classes:
/// the row space of alpha_functional_matrix after quotienting out the
/// three-dimensional block of coboundaries.
int spectrum_map_rank(std::span<const LorentzMap> gens,
                      std::span<const Word> words,
                      const Config& cfg = default_config());

struct NormalizedPair {
  Presentation p2;      ///< second group, conjugated into the aligned position
  LorentzMap f;         ///< linear normalizer (possibly orientation-reversing)
  Vec3 translation;     ///< pure translation applied after f
};

/// Conjugates p2 (rank two, hyperbolic generators gamma = gens[0],
/// eta = gens[1]) so that eta's null directions and gamma's repelling
/// direction match p1's, then slides the invariant line of eta onto p1's.
NormalizedPair normalize_pair(const Presentation& p1, const Presentation& p2,
                              const Config& cfg = default_config());

/// After normalization: checks that the displacement coefficient kappa agrees
/// on both sides and that the remaining attracting direction of gamma
/// coincides, comparing the invariants of eta^n gamma^m up to n_max first.
bool match_remaining_eigendirection(const Presentation& p1,
                                    const Presentation& p2n, int n_max,
                                    Real tol,
                                    const Config& cfg = default_config());

/// Verifies equality of the generator eigenvalues through the frames of the
/// conjugated words g h g^-1 and h g h^-1, with a direct trace cross-check.
bool match_eigenvalues(const Presentation& p1, const Presentation& p2n,
                       Real tol, const Config& cfg = default_config());

/// Full reconstruction: hyperbolize, compare marked spectra up to max_len
/// (allowing one global sign, which orientation-reversing conjugations
/// introduce), align each generator pair, recover the translation, and
/// verify a single candidate conjugator against every generator.
ConjugacyCertificate strong_reconstruct(const Presentation& p1,
                                        const Presentation& p2, int max_len,
                                        Real tol,
                                        const Config& cfg = default_config());

/// Purely hyperbolic linear groups: checks whether the word-to-fixed-points
/// map agrees on every reduced word up to max_len.
bool fixed_point_isospectrality_check(const Presentation& p1,
                                      const Presentation& p2, int max_len,
                                      Real tol,
                                      const Config& cfg = default_config());

}  // namespace margulis
