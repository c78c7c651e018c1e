#include "margulis/group.hpp"

#include <cmath>
#include <numbers>

namespace margulis {

namespace {
constexpr Real kTwoPi = 2 * std::numbers::pi_v<Real>;

Real angle_distance(Real a, Real b) {
  Real d = std::fmod(std::abs(a - b), kTwoPi);
  return std::min(d, kTwoPi - d);
}
}  // namespace

void validate_presentation(const Presentation& p, const Config& cfg) {
  if (p.gens.empty()) throw MalformedInput("presentation: no generators");
  if (!p.orders.empty() && p.orders.size() != p.gens.size())
    throw MalformedInput("presentation: orders length mismatch");
  for (size_t j = 0; j < p.gens.size(); ++j) {
    if (!p.gens[j].linear.restricted())
      throw NotLorentz("presentation: linear part outside SO(2,1)^0");
    if (p.gens[j].linear.orthogonality_defect() > cfg.eps_orth)
      throw NotLorentz("presentation: linear part fails the form check");
    if (!p.orders.empty() && p.orders[j]) {
      const AffineIso power = affine_pow(p.gens[j], *p.orders[j]);
      if ((power.homogeneous() - Mat4::Identity()).cwiseAbs().maxCoeff() > 1e-9)
        throw MalformedInput("presentation: claimed finite order fails");
    }
  }
}

Presentation linear_presentation(std::vector<LorentzMap> gens, Orders orders) {
  Presentation p;
  p.gens.reserve(gens.size());
  for (auto& g : gens) p.gens.push_back(AffineIso{g, Vec3::Zero()});
  p.orders = orders.empty() ? Orders(p.gens.size(), std::nullopt) : std::move(orders);
  return p;
}

std::vector<LorentzMap> linear_parts(const Presentation& p) {
  std::vector<LorentzMap> out;
  out.reserve(p.gens.size());
  for (const auto& g : p.gens) out.push_back(g.linear);
  return out;
}

AffineIso evaluate_word(const Presentation& p, const Word& w) {
  AffineIso acc = AffineIso::identity();
  for (const Syllable& s : w.syllables) {
    if (s.gen < 0 || s.gen >= p.rank())
      throw UnknownGenerator("evaluate_word: generator out of range");
    acc = acc * affine_pow(p.gens[static_cast<size_t>(s.gen)], s.exp);
  }
  return acc;
}

Cocycle cocycle_of(const Presentation& p) {
  Cocycle u;
  u.gen_trans.reserve(p.gens.size());
  for (const auto& g : p.gens) u.gen_trans.push_back(g.trans);
  return u;
}

Presentation with_cocycle(const Presentation& linear, const Cocycle& u) {
  if (u.gen_trans.size() != linear.gens.size())
    throw MalformedInput("with_cocycle: cocycle size mismatch");
  Presentation p = linear;
  for (size_t j = 0; j < p.gens.size(); ++j) p.gens[j].trans = u.gen_trans[j];
  return p;
}

Vec3 cocycle_extend(const Cocycle& u, const Word& w,
                    std::span<const LorentzMap> gens) {
  if (u.gen_trans.size() != gens.size())
    throw MalformedInput("cocycle_extend: cocycle size mismatch");
  Vec3 v = Vec3::Zero();
  Mat3 prefix = Mat3::Identity();
  for (const Syllable& s : w.syllables) {
    if (s.gen < 0 || s.gen >= static_cast<int>(gens.size()))
      throw UnknownGenerator("cocycle_extend: generator out of range");
    const size_t j = static_cast<size_t>(s.gen);
    const bool inv = s.exp < 0;
    const Mat3 step = inv ? gens[j].inverse().m : gens[j].m;
    const Vec3 vg = inv ? Vec3(-(step * u.gen_trans[j])) : u.gen_trans[j];
    for (long i = 0; i < std::labs(s.exp); ++i) {
      v += prefix * vg;
      prefix = prefix * step;
    }
  }
  return v;
}

Real boundary_angle(const Vec3& v) { return std::atan2(v(1), v(0)); }

Vec3 boundary_point(Real angle) {
  const Real b = Real(1) / std::sqrt(Real(2));
  return Vec3(b * std::cos(angle), b * std::sin(angle), b);
}

namespace {

Real circle_map(const LorentzMap& g, Real angle) {
  return boundary_angle(g.m * boundary_point(angle));
}

// Smallest symmetric radius for which g maps the complement of the interval
// about the repeller into the interval about the attractor.
std::optional<Real> minimal_interval_radius(const LorentzMap& g, Real cm,
                                            Real cp, const Config& cfg) {
  const auto maps_inside = [&](Real r) {
    const Real arc = kTwoPi - 2 * r;
    for (int k = 0; k < cfg.schottky_samples; ++k) {
      const Real phi = cm + r + arc * (Real(k) + Real(0.5)) / cfg.schottky_samples;
      if (angle_distance(circle_map(g, phi), cp) > r) return false;
    }
    // interval endpoints as well
    return angle_distance(circle_map(g, cm + r), cp) <= r &&
           angle_distance(circle_map(g, cm - r), cp) <= r;
  };
  Real lo = 0, hi = std::numbers::pi_v<Real> / 2;
  if (!maps_inside(hi)) return std::nullopt;
  for (int i = 0; i < cfg.schottky_bisection_iters; ++i) {
    const Real mid = (lo + hi) / 2;
    (maps_inside(mid) ? hi : lo) = mid;
  }
  return hi;
}

}  // namespace

std::optional<SchottkyIntervals> find_schottky_intervals(
    std::span<const LorentzMap> gens, Real margin, const Config& cfg) {
  if (gens.empty()) throw MalformedInput("find_schottky_intervals: no generators");
  SchottkyIntervals out;
  out.per_gen.reserve(gens.size());
  for (const LorentzMap& g : gens) {
    const NullFrame f = null_frame(g, cfg);  // throws NotHyperbolic
    const Real cp = boundary_angle(f.xp), cm = boundary_angle(f.xm);
    const auto r = minimal_interval_radius(g, cm, cp, cfg);
    if (!r) return std::nullopt;
    out.per_gen.push_back({SchottkyInterval{cp, *r}, SchottkyInterval{cm, *r}});
  }
  // pairwise disjointness with the requested margin
  std::vector<SchottkyInterval> flat;
  for (const auto& pair : out.per_gen) {
    flat.push_back(pair[0]);
    flat.push_back(pair[1]);
  }
  out.min_gap = kTwoPi;
  for (size_t i = 0; i < flat.size(); ++i)
    for (size_t j = i + 1; j < flat.size(); ++j) {
      const Real gap =
          angle_distance(flat[i].center, flat[j].center) - flat[i].radius - flat[j].radius;
      out.min_gap = std::min(out.min_gap, gap);
    }
  if (out.min_gap < margin) return std::nullopt;
  return out;
}

bool verify_schottky(std::span<const LorentzMap> gens, Real margin,
                     const Config& cfg) {
  return find_schottky_intervals(gens, margin, cfg).has_value();
}

Presentation make_schottky_pair(Real t1, Real t2, Real theta,
                                unsigned long /*seed*/, const Config& cfg) {
  if (!(t1 > 0) || !(t2 > 0))
    throw MalformedInput("make_schottky_pair: boost parameters must be positive");
  const LorentzMap r = rotation_map(theta);
  for (int p = 1; p <= cfg.schottky_power_max; ++p) {
    const LorentzMap g = boost_map(p * t1);
    const LorentzMap h = r * boost_map(p * t2) * r.inverse();
    const std::array<LorentzMap, 2> lin{g, h};
    if (verify_schottky(lin, cfg.schottky_margin, cfg))
      return linear_presentation({g, h});
  }
  throw FailedToSeparate("make_schottky_pair: no verified power up to the cap");
}

namespace {

bool hyperbolic_with_margin(const LorentzMap& g, const Config& cfg) {
  return g.restricted() && g.m.trace() > Real(3) + cfg.hyperbolic_margin;
}

// True when the candidate's fixed set is (numerically) carried into itself
// by e, which disqualifies the candidate as a base word.
bool fixed_set_invariant(const NullFrame& f, const LorentzMap& e,
                         const Config& cfg) {
  const Vec3 ip = projective_action(e, f.xp, cfg);
  const Vec3 im = projective_action(e, f.xm, cfg);
  const Real m = cfg.elliptic_orbit_margin;
  const bool keep = (ip - f.xp).norm() < m && (im - f.xm).norm() < m;
  const bool swap = (ip - f.xm).norm() < m && (im - f.xp).norm() < m;
  return keep || swap;
}

bool base_admissible(const Word& w, const Presentation& p, const Config& cfg) {
  const AffineIso img = evaluate_word(p, w);
  if (!hyperbolic_with_margin(img.linear, cfg)) return false;
  const NullFrame f = null_frame(img.linear, cfg);
  for (const auto& gen : p.gens) {
    if (classify(gen.linear, cfg) != IsometryClass::Elliptic) continue;
    if (fixed_set_invariant(f, gen.linear, cfg)) return false;
  }
  return true;
}

}  // namespace

Hyperbolization hyperbolize(const Presentation& p1, const Presentation& p2,
                            const Config& cfg) {
  if (p1.rank() != p2.rank() || p1.orders != p2.orders)
    throw MalformedInput("hyperbolize: presentations do not share a marking");
  const int n = p1.rank();
  const Orders& ord = p1.orders;

  const auto admissible = [&](const Word& w) {
    return base_admissible(w, p1, cfg) && base_admissible(w, p2, cfg);
  };

  // Base word: a generator if possible, otherwise g_b g_j^k.
  std::optional<Word> base;
  int base_gen = -1;
  bool saw_orbit_failure = false;
  for (int j = 0; j < n && !base; ++j) {
    Word w = reduce_word(std::array{Syllable{j, 1}}, ord);
    const AffineIso a1 = evaluate_word(p1, w), a2 = evaluate_word(p2, w);
    if (hyperbolic_with_margin(a1.linear, cfg) &&
        hyperbolic_with_margin(a2.linear, cfg)) {
      if (admissible(w)) {
        base = w;
        base_gen = j;
      } else {
        saw_orbit_failure = true;
      }
    }
  }
  for (int b = 0; b < n && !base; ++b) {
    for (int j2 = 0; j2 < n && !base; ++j2) {
      if (j2 == b) continue;
      for (int step = 1; step <= cfg.hyperbolize_k_max && !base; ++step) {
        for (const long k : {long(step), long(-step)}) {
          Word w = reduce_word(
              std::array{Syllable{b, 1}, Syllable{j2, k}}, ord);
          if (w.empty()) continue;
          if (admissible(w)) {
            base = w;
            base_gen = b;
            break;
          }
          const AffineIso a1 = evaluate_word(p1, w), a2 = evaluate_word(p2, w);
          if (hyperbolic_with_margin(a1.linear, cfg) &&
              hyperbolic_with_margin(a2.linear, cfg))
            saw_orbit_failure = true;
        }
      }
    }
  }
  if (!base) {
    if (saw_orbit_failure)
      throw NonElementaryViolated(
          "hyperbolize: every hyperbolic candidate has an invariant fixed set");
    throw HyperbolizationFailed("hyperbolize: no common hyperbolic base word");
  }

  Hyperbolization out;
  out.words.push_back(*base);
  for (int j = 0; j < n; ++j) {
    if (j == base_gen) continue;
    Word single = reduce_word(std::array{Syllable{j, 1}}, ord);
    const AffineIso a1 = evaluate_word(p1, single), a2 = evaluate_word(p2, single);
    if (hyperbolic_with_margin(a1.linear, cfg) &&
        hyperbolic_with_margin(a2.linear, cfg)) {
      out.words.push_back(single);
      continue;
    }
    bool found = false;
    for (int step = 1; step <= cfg.hyperbolize_k_max && !found; ++step) {
      for (const long k : {long(step), long(-step)}) {
        const Word w = word_concat(word_power(*base, k, ord), single, ord);
        const AffineIso b1 = evaluate_word(p1, w), b2 = evaluate_word(p2, w);
        if (hyperbolic_with_margin(b1.linear, cfg) &&
            hyperbolic_with_margin(b2.linear, cfg)) {
          out.words.push_back(w);
          found = true;
          break;
        }
      }
    }
    if (!found)
      throw HyperbolizationFailed(
          "hyperbolize: power search exhausted for generator " + std::to_string(j + 1));
  }

  const auto regenerate = [&](const Presentation& p) {
    Presentation q;
    q.orders = Orders(out.words.size(), std::nullopt);
    for (const Word& w : out.words) q.gens.push_back(evaluate_word(p, w));
    return q;
  };
  out.p1 = regenerate(p1);
  out.p2 = regenerate(p2);
  return out;
}

}  // namespace margulis
