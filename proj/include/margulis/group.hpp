#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "margulis/affine.hpp"
#include "margulis/words.hpp"

namespace margulis {

/// A marked generating set for a free product of cyclic groups acting by
/// affine isometries.  orders[j] gives the finite order of generator j when
/// engaged; linear parts are expected in SO(2,1)^0.
struct Presentation {
  std::vector<AffineIso> gens;
  Orders orders;

  int rank() const { return static_cast<int>(gens.size()); }
};

/// Throws unless the linear parts are restricted and finite-order claims
/// hold numerically.
void validate_presentation(const Presentation& p, const Config& cfg = default_config());

Presentation linear_presentation(std::vector<LorentzMap> gens, Orders orders = {});

std::vector<LorentzMap> linear_parts(const Presentation& p);

/// Left-to-right product of generator powers.
AffineIso evaluate_word(const Presentation& p, const Word& w);

/// Translational parts of an affine deformation, one per generator.
struct Cocycle {
  std::vector<Vec3> gen_trans;
};

Cocycle cocycle_of(const Presentation& p);

Presentation with_cocycle(const Presentation& linear, const Cocycle& u);

/// Translational part of the word's image under the deformation determined
/// by u, evaluated with the rule v_{gh} = v_g + g(v_h) (and
/// v_{g^-1} = -g^-1 v_g on inverse letters).
Vec3 cocycle_extend(const Cocycle& u, const Word& w,
                    std::span<const LorentzMap> gens);

// --- boundary circle -------------------------------------------------------

/// Angle of the boundary ray through a future-pointing vector.
Real boundary_angle(const Vec3& v);

/// Euclidean-unit null vector at the given boundary angle.
Vec3 boundary_point(Real angle);

struct SchottkyInterval {
  Real center = 0;  ///< boundary angle
  Real radius = 0;  ///< half-width, in radians
};

struct SchottkyIntervals {
  /// Per generator: interval about the attractor x+ then about the repeller x-.
  std::vector<std::array<SchottkyInterval, 2>> per_gen;
  Real min_gap = 0;  ///< smallest pairwise angular gap between intervals
};

/// Searches for ping-pong intervals: per generator the smallest symmetric
/// radius (bisected) for which the map sends the complement of the repelling
/// interval into the attracting one, sampled densely; then demands pairwise
/// disjointness with the given angular margin.
std::optional<SchottkyIntervals> find_schottky_intervals(
    std::span<const LorentzMap> gens, Real margin,
    const Config& cfg = default_config());

bool verify_schottky(std::span<const LorentzMap> gens, Real margin,
                     const Config& cfg = default_config());

/// Crossing-axis pair g = boost(t1)^p, h = r(theta) boost(t2)^p r(-theta),
/// with p the smallest power that verifies.  The seed parameter is part of
/// the interface for reproducibility plumbing; the construction itself is
/// deterministic in (t1, t2, theta).
Presentation make_schottky_pair(Real t1, Real t2, Real theta,
                                unsigned long seed = 0,
                                const Config& cfg = default_config());

/// Result of rewriting two parallel generating sets so that every new
/// generator is hyperbolic in both images.  words[j] expresses the j-th new
/// generator in the original ones; p1 and p2 are the regenerated markings
/// (all orders infinite).
struct Hyperbolization {
  std::vector<Word> words;
  Presentation p1;
  Presentation p2;
};

/// Implements the generating-set repair: a base word (a generator, or
/// g_b g_j^k) hyperbolic in both groups and with fixed set not invariant
/// under any elliptic generator, then base^k g_j substitutions for the rest.
/// Searches k = 1, -1, 2, -2, ... up to cfg.hyperbolize_k_max.
Hyperbolization hyperbolize(const Presentation& p1, const Presentation& p2,
                            const Config& cfg = default_config());

}  // namespace margulis
