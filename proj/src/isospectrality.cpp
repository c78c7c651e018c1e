#include "margulis/isospectrality.hpp"

#include <cmath>
#include <limits>

namespace margulis {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Conjugate: return "conjugate";
    case Verdict::Mismatch: return "mismatch";
    default: return "inconclusive";
  }
}

namespace {

Real op_norm(const Mat4& m) {
  return Eigen::JacobiSVD<Mat4>(m).singularValues()(0);
}

Real conjugation_residual(const Presentation& target, const Presentation& source,
                          const AffineIso& c) {
  Real worst = 0;
  const AffineIso ci = c.inverse();
  for (size_t j = 0; j < target.gens.size(); ++j) {
    const AffineIso mapped = c * source.gens[j] * ci;
    worst = std::max(worst,
                     op_norm(target.gens[j].homogeneous() - mapped.homogeneous()));
  }
  return worst;
}

Presentation sub_pair(const Presentation& p, int i, int j) {
  Presentation q;
  q.gens = {p.gens[static_cast<size_t>(i)], p.gens[static_cast<size_t>(j)]};
  q.orders = {std::nullopt, std::nullopt};
  return q;
}

Presentation negate_translations(Presentation p) {
  for (auto& g : p.gens) g.trans = -g.trans;
  return p;
}

AffineIso minus_identity_iso() {
  LorentzMap d;
  d.m = -Mat3::Identity();
  d.det_sign = -1;
  d.time_sign = -1;
  return AffineIso{d, Vec3::Zero()};
}

// Requires some pair of hyperbolic generators with genuinely disjoint fixed
// sets; a single common direction makes every invariant-recovery step
// singular.
void require_nonelementary(const Presentation& p, const Config& cfg) {
  std::vector<NullFrame> frames;
  for (const auto& g : p.gens)
    if (classify(g.linear, cfg) == IsometryClass::Hyperbolic)
      frames.push_back(null_frame(g.linear, cfg));
  if (frames.empty())
    throw ElementaryGroup("no hyperbolic generator to anchor the comparison");
  for (size_t i = 0; i < frames.size(); ++i)
    for (size_t j = i + 1; j < frames.size(); ++j) {
      Real closest = std::numeric_limits<Real>::max();
      for (const Vec3* a : {&frames[i].xm, &frames[i].xp})
        for (const Vec3* b : {&frames[j].xm, &frames[j].xp})
          closest = std::min(closest, (*a - *b).norm());
      if (closest > cfg.eps_degenerate) return;  // disjoint fixed sets found
    }
  if (frames.size() > 1)
    throw ElementaryGroup("hyperbolic generators all share fixed directions");
}

struct SpectraComparison {
  bool matched = true;
  int sign = 1;
  std::optional<Word> witness;
  Real dalpha = 0;
  long checked = 0;
};

// Entrywise comparison on words hyperbolic in both groups.  A global sign is
// tolerated: conjugating by an orientation-reversing isometry negates every
// invariant at once.
SpectraComparison compare_spectra(const Spectrum& s1, const Spectrum& s2,
                                  Real tol) {
  SpectraComparison out;
  int sign = 0;
  for (size_t i = 0; i < s1.entries.size(); ++i) {
    const auto& e1 = s1.entries[i];
    const auto& e2 = s2.entries[i];
    if (e1.skipped || e2.skipped) continue;
    ++out.checked;
    const Real diff = std::abs(e1.alpha - e2.alpha);
    const Real anti = std::abs(e1.alpha + e2.alpha);
    if (sign == 0) {
      if (diff <= tol && anti <= tol) continue;  // too small to fix a sign
      if (diff <= tol) {
        sign = 1;
        continue;
      }
      if (anti <= tol) {
        sign = -1;
        continue;
      }
    } else if ((sign > 0 ? diff : anti) <= tol) {
      continue;
    }
    out.matched = false;
    out.sign = sign == 0 ? 1 : sign;
    out.witness = e1.word;
    out.dalpha = sign == 0 ? std::min(diff, anti) : (sign > 0 ? diff : anti);
    return out;
  }
  out.sign = sign == 0 ? 1 : sign;
  return out;
}

}  // namespace

ConjugacyCertificate weak_recover_translation(const Presentation& p1,
                                              const Presentation& p2, Real tol,
                                              const Config& cfg) {
  if (p1.rank() != p2.rank() || p1.rank() == 0)
    throw MalformedInput("weak_recover_translation: rank mismatch");
  for (int j = 0; j < p1.rank(); ++j) {
    const Real d = (p1.gens[j].linear.m - p2.gens[j].linear.m).cwiseAbs().maxCoeff();
    if (d > cfg.shared_linear_tol)
      throw SharedLinearPartViolated(
          "weak_recover_translation: linear parts differ on generator " +
          std::to_string(j + 1));
  }
  const int n = p1.rank();
  Eigen::MatrixXd a(3 * n, 3);
  Eigen::VectorXd rhs(3 * n);
  for (int j = 0; j < n; ++j) {
    a.middleRows<3>(3 * j) = Mat3::Identity() - p1.gens[j].linear.m;
    rhs.segment<3>(3 * j) = p1.gens[j].trans - p2.gens[j].trans;
  }
  const Eigen::BDCSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  if (sv(2) <= cfg.rank_sv_cutoff * std::max(Real(1), sv(0)))
    throw ElementaryGroup(
        "weak_recover_translation: translation not unique (elementary linear part)");
  const Vec3 tau = svd.solve(rhs);

  ConjugacyCertificate cert;
  cert.tau = tau;
  cert.words_checked = n;
  const AffineIso c = translation_iso(tau);
  cert.residual = conjugation_residual(p1, p2, c);
  if (cert.residual < tol) {
    cert.verdict = Verdict::Conjugate;
  } else {
    cert.verdict = Verdict::Mismatch;
    // attach a short witness when the spectra already disagree
    const Spectrum s1 = marked_spectrum(p1, 3, cfg);
    const Spectrum s2 = marked_spectrum(p2, 3, cfg);
    const auto cmp = compare_spectra(s1, s2, cfg.alpha_tol);
    cert.words_checked += cmp.checked;
    if (!cmp.matched) {
      cert.witness = cmp.witness;
      cert.witness_dalpha = cmp.dalpha;
    }
  }
  return cert;
}

int spectrum_map_rank(std::span<const LorentzMap> gens,
                      std::span<const Word> words, const Config& cfg) {
  const int n = static_cast<int>(gens.size());
  Eigen::MatrixXd a = alpha_functional_matrix(gens, words, cfg);
  // switch the Lorentzian block pairing to plain coordinates
  for (int j = 0; j < n; ++j) a.col(3 * j + 2) *= Real(-1);
  Eigen::MatrixXd b(3 * n, 3);
  for (int j = 0; j < n; ++j)
    b.middleRows<3>(3 * j) = Mat3::Identity() - gens[static_cast<size_t>(j)].m;
  const Eigen::BDCSVD<Eigen::MatrixXd> bsvd(b, Eigen::ComputeFullU);
  const Eigen::MatrixXd comp = bsvd.matrixU().rightCols(3 * n - 3);
  const Eigen::MatrixXd reduced = a * comp;
  const auto sv = Eigen::BDCSVD<Eigen::MatrixXd>(reduced).singularValues();
  int rank = 0;
  for (long i = 0; i < sv.size(); ++i)
    if (sv(i) > cfg.rank_sv_cutoff) ++rank;
  return rank;
}

NormalizedPair normalize_pair(const Presentation& p1, const Presentation& p2,
                              const Config& cfg) {
  if (p1.rank() != 2 || p2.rank() != 2)
    throw MalformedInput("normalize_pair: rank-two presentations required");
  const NullFrame f1g = null_frame(p1.gens[0].linear, cfg);
  const NullFrame f1h = null_frame(p1.gens[1].linear, cfg);
  const NullFrame f2g = null_frame(p2.gens[0].linear, cfg);
  const NullFrame f2h = null_frame(p2.gens[1].linear, cfg);

  const LorentzMap f = triple_conjugator({f2h.xp, f2h.xm, f2g.xm},
                                         {f1h.xp, f1h.xm, f1g.xm}, cfg);
  const AffineIso fa{f, Vec3::Zero()};
  Presentation p2f = p2;
  for (auto& g : p2f.gens) g = conjugate(fa, g);

  const NullFrame aligned = null_frame(p2f.gens[1].linear, cfg);
  if ((aligned.xp - f1h.xp).norm() > cfg.frame_match_tol ||
      (aligned.xm - f1h.xm).norm() > cfg.frame_match_tol ||
      (aligned.x0 - f1h.x0).norm() > cfg.frame_match_tol)
    throw NotParallel("normalize_pair: invariant lines failed to align");

  const InvariantLine l1 = invariant_line(p1.gens[1], cfg);
  const InvariantLine l2 = invariant_line(p2f.gens[1], cfg);
  const Vec3 axis = l1.dir.normalized();
  const Vec3 delta = l1.point - l2.point;
  const Vec3 t = delta - axis * delta.dot(axis);

  const AffineIso ta = translation_iso(t);
  NormalizedPair out;
  out.p2 = p2f;
  for (auto& g : out.p2.gens) g = conjugate(ta, g);
  out.f = f;
  out.translation = t;
  return out;
}

bool match_remaining_eigendirection(const Presentation& p1,
                                    const Presentation& p2n, int n_max,
                                    Real tol, const Config& cfg) {
  if (p1.rank() != 2 || p2n.rank() != 2)
    throw MalformedInput("match_remaining_eigendirection: rank-two inputs required");
  const AffineIso &g1 = p1.gens[0], &h1 = p1.gens[1];
  const AffineIso &g2 = p2n.gens[0], &h2 = p2n.gens[1];

  // Depth adapts to the contraction rate: strong contraction pins the
  // displacement coefficient with few powers, and word entries growing like
  // lambda^-(n+m) would otherwise outrun even the compensated evaluation.
  {
    const Real lam = std::max(null_frame(g1.linear, cfg).lambda,
                              null_frame(h1.linear, cfg).lambda);
    const int adaptive =
        static_cast<int>(std::llround(Real(6) / std::log10(Real(1) / lam)));
    n_max = std::clamp(adaptive, 4, n_max);
  }

  for (int n = 0; n <= n_max; ++n)
    for (int m = 0; m <= n_max; ++m) {
      if (n == 0 && m == 0) continue;
      const LorentzMap w1 = (affine_pow(h1, n) * affine_pow(g1, m)).linear;
      const LorentzMap w2 = (affine_pow(h2, n) * affine_pow(g2, m)).linear;
      if (classify(w1, cfg) != IsometryClass::Hyperbolic ||
          classify(w2, cfg) != IsometryClass::Hyperbolic)
        continue;
      const Real a1 = alpha_power_word(g1, h1, n, m);
      const Real a2 = alpha_power_word(g2, h2, n, m);
      if (std::abs(a1 - a2) > tol) return false;
    }

  const AsymptoticData k1 = kappa_data(g1, h1, cfg);
  const AsymptoticData k2 = kappa_data(g2, h2, cfg);
  if (std::abs(k1.kappa - k2.kappa) > std::max(Real(100) * tol, Real(1e-6)))
    return false;

  const NullFrame fr1 = null_frame(g1.linear, cfg);
  const NullFrame fr2 = null_frame(g2.linear, cfg);
  return (fr1.xp - fr2.xp).norm() <= tol;
}

bool match_eigenvalues(const Presentation& p1, const Presentation& p2n, Real tol,
                       const Config& cfg) {
  if (p1.rank() != 2 || p2n.rank() != 2)
    throw MalformedInput("match_eigenvalues: rank-two inputs required");
  const auto xp_of = [&](const AffineIso& w) {
    return null_frame(w.linear, cfg).xp;
  };
  const AffineIso &g1 = p1.gens[0], &h1 = p1.gens[1];
  const AffineIso &g2 = p2n.gens[0], &h2 = p2n.gens[1];
  const AffineIso c1 = g1 * h1 * g1.inverse(), c2 = g2 * h2 * g2.inverse();
  const AffineIso d1 = h1 * g1 * h1.inverse(), d2 = h2 * g2 * h2.inverse();
  if ((xp_of(c1) - xp_of(c2)).norm() > tol) return false;
  if ((xp_of(d1) - xp_of(d2)).norm() > tol) return false;
  const Real trg1 = g1.linear.m.trace(), trg2 = g2.linear.m.trace();
  const Real trh1 = h1.linear.m.trace(), trh2 = h2.linear.m.trace();
  return std::abs(trg1 - trg2) <= tol * (Real(1) + std::abs(trg1)) &&
         std::abs(trh1 - trh2) <= tol * (Real(1) + std::abs(trh1));
}

ConjugacyCertificate strong_reconstruct(const Presentation& p1,
                                        const Presentation& p2, int max_len,
                                        Real tol, const Config& cfg) {
  validate_presentation(p1, cfg);
  validate_presentation(p2, cfg);
  if (is_radiant(p1.gens, cfg.radiant_tol) || is_radiant(p2.gens, cfg.radiant_tol))
    throw RadiantInput("strong_reconstruct: input group fixes a point");
  require_nonelementary(p1, cfg);
  require_nonelementary(p2, cfg);

  const Hyperbolization hype = hyperbolize(p1, p2, cfg);
  const int n = static_cast<int>(hype.words.size());

  const Spectrum s1 = marked_spectrum(hype.p1, max_len, cfg);
  const Spectrum s2 = marked_spectrum(hype.p2, max_len, cfg);
  const auto cmp = compare_spectra(s1, s2, tol);

  ConjugacyCertificate cert;
  cert.words_checked = cmp.checked;
  if (!cmp.matched) {
    cert.verdict = Verdict::Mismatch;
    cert.witness = cmp.witness;
    cert.witness_dalpha = cmp.dalpha;
    return cert;
  }

  std::vector<AffineIso> candidates;
  try {
    for (int j = 1; j < n; ++j) {
      const Presentation r1 = sub_pair(hype.p1, 0, j);
      const Presentation r2 = sub_pair(hype.p2, 0, j);
      const NormalizedPair norm = normalize_pair(r1, r2, cfg);
      bool pair_ok = false;
      for (const bool flip : {false, true}) {
        const Presentation r2v =
            flip ? negate_translations(norm.p2) : norm.p2;
        if (!match_remaining_eigendirection(r1, r2v, cfg.asymptotic_n_max,
                                            cfg.frame_match_tol, cfg))
          continue;
        if (!match_eigenvalues(r1, r2v, cfg.frame_match_tol, cfg)) continue;
        Config relaxed = cfg;
        relaxed.shared_linear_tol = cfg.pipeline_linear_tol;
        ConjugacyCertificate wc;
        try {
          wc = weak_recover_translation(r1, r2v, cfg.residual_tol, relaxed);
        } catch (const SharedLinearPartViolated&) {
          continue;
        }
        if (wc.verdict != Verdict::Conjugate) continue;
        pair_ok = true;
        if (j == 1) {
          const AffineIso na{norm.f, norm.translation};
          candidates.push_back(
              translation_iso(wc.tau) *
              (flip ? minus_identity_iso() * na : na));
        } else {
          break;
        }
      }
      if (!pair_ok) {
        cert.verdict = Verdict::Inconclusive;
        return cert;
      }
    }
  } catch (const Error&) {
    cert.verdict = Verdict::Inconclusive;
    return cert;
  }

  if (candidates.empty()) {
    cert.verdict = Verdict::Inconclusive;
    return cert;
  }
  Real best = std::numeric_limits<Real>::max();
  AffineIso best_c;
  for (const AffineIso& c : candidates) {
    const Real res = std::max(conjugation_residual(hype.p1, hype.p2, c),
                              conjugation_residual(p1, p2, c));
    if (res < best) {
      best = res;
      best_c = c;
    }
  }
  cert.f = best_c.linear;
  cert.tau = best_c.trans;
  cert.residual = best;
  cert.verdict = best < cfg.residual_tol ? Verdict::Conjugate : Verdict::Inconclusive;
  return cert;
}

bool fixed_point_isospectrality_check(const Presentation& p1,
                                      const Presentation& p2, int max_len,
                                      Real tol, const Config& cfg) {
  if (p1.rank() != p2.rank())
    throw MalformedInput("fixed_point_isospectrality_check: rank mismatch");
  const std::vector<Word> words =
      enumerate_words(p1.rank(), p1.orders, max_len);
  for (const Word& w : words) {
    const LorentzMap w1 = evaluate_word(p1, w).linear;
    const LorentzMap w2 = evaluate_word(p2, w).linear;
    if (classify(w1, cfg) != IsometryClass::Hyperbolic ||
        classify(w2, cfg) != IsometryClass::Hyperbolic)
      throw NotHyperbolic("fixed_point_isospectrality_check: word '" +
                          word_to_string(w) + "' is not hyperbolic");
    const NullFrame f1 = null_frame(w1, cfg);
    const NullFrame f2 = null_frame(w2, cfg);
    if ((f1.xp - f2.xp).norm() > tol || (f1.xm - f2.xm).norm() > tol)
      return false;
  }
  return true;
}

}  // namespace margulis
