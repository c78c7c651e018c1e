#include "margulis/spectrum.hpp"

#include <quadmath.h>

#include <cstdlib>
#include <mutex>
#include <thread>

namespace Eigen {
template <>
struct NumTraits<__float128> : GenericNumTraits<__float128> {
  typedef __float128 Real;
  typedef __float128 NonInteger;
  typedef __float128 Nested;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 0,
    ReadCost = 2,
    AddCost = 6,
    MulCost = 8
  };
  static inline Real epsilon() { return FLT128_EPSILON; }
  static inline Real dummy_precision() { return Real(1e-60Q); }
  static inline Real highest() { return FLT128_MAX; }
  static inline Real lowest() { return -FLT128_MAX; }
};
}  // namespace Eigen

namespace margulis {

namespace {

using Quad = __float128;
using QVec = Eigen::Matrix<Quad, 3, 1>;
using QMat = Eigen::Matrix<Quad, 3, 3>;

QMat to_quad(const Mat3& m) { return m.cast<Quad>(); }
QVec to_quad(const Vec3& v) { return v.cast<Quad>(); }

QVec qnormalize(const QVec& v) {
  return v / sqrtq(v(0) * v(0) + v(1) * v(1) + v(2) * v(2));
}

QMat qlorentz_inverse(const QMat& m) {
  QMat j = QMat::Identity();
  j(2, 2) = Quad(-1);
  return j * m.transpose() * j;
}

struct QAffine {
  QMat m = QMat::Identity();
  QVec v = QVec::Zero();
  QAffine operator*(const QAffine& r) const { return {m * r.m, v + m * r.v}; }
};

QAffine qpow(QAffine base, long n) {
  if (n < 0) {
    base = QAffine{qlorentz_inverse(base.m),
                   QVec(-(qlorentz_inverse(base.m) * base.v))};
    n = -n;
  }
  QAffine acc;
  while (n > 0) {
    if (n & 1) acc = acc * base;
    base = base * base;
    n >>= 1;
  }
  return acc;
}

/// Frame directions of a word image, refined in quad precision from the
/// double-precision seed.
struct QFrame {
  QVec x0, xm, xp;
};

QFrame qframe(const QAffine& word, const NullFrame& seed) {
  QVec xp = to_quad(seed.xp), xm = to_quad(seed.xm);
  const QMat inv = qlorentz_inverse(word.m);
  for (int i = 0; i < 4; ++i) {
    xp = qnormalize(word.m * xp);
    xm = qnormalize(inv * xm);
  }
  if (xp(2) < 0) xp = -xp;
  if (xm(2) < 0) xm = -xm;
  QFrame f;
  f.xm = xm;
  f.xp = xp;
  f.x0 = -box(xm, xp) / lorentz_dot(xm, xp);
  return f;
}

QAffine qword(const AffineIso& gamma, const AffineIso& eta, int n, int m) {
  const QAffine qg{to_quad(gamma.linear.m), to_quad(gamma.trans)};
  const QAffine qh{to_quad(eta.linear.m), to_quad(eta.trans)};
  return qpow(qh, n) * qpow(qg, m);
}

QAffine q_evaluate(const std::vector<QAffine>& qgens, const Word& w) {
  QAffine acc;
  for (const Syllable& s : w.syllables)
    acc = acc * qpow(qgens[static_cast<size_t>(s.gen)], s.exp);
  return acc;
}

// invariant of a word image, with the whole evaluation compensated so that
// the cancellation in <v, x0> does not eat the tolerance on long words
Real q_alpha(const QAffine& word, const NullFrame& seed) {
  const QFrame f = qframe(word, seed);
  return static_cast<Real>(lorentz_dot(word.v, f.x0));
}

LorentzMap word_map(const AffineIso& gamma, const AffineIso& eta, int n, int m) {
  return (affine_pow(eta, n) * affine_pow(gamma, m)).linear;
}

int thread_budget(size_t work_items) {
  if (work_items < 64) return 1;
  unsigned n = std::thread::hardware_concurrency();
  if (n == 0) n = 1;
  if (const char* env = std::getenv("MARGULIS_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
  }
  return static_cast<int>(std::min<size_t>(n, work_items));
}

}  // namespace

Spectrum marked_spectrum(const Presentation& p, int max_len, const Config& cfg) {
  validate_presentation(p, cfg);
  const std::vector<Word> words = enumerate_words(p.rank(), p.orders, max_len);
  std::vector<QAffine> qgens;
  qgens.reserve(p.gens.size());
  for (const auto& g : p.gens)
    qgens.push_back({to_quad(g.linear.m), to_quad(g.trans)});
  Spectrum s;
  s.entries.resize(words.size());
  const int n_threads = thread_budget(words.size());
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto work = [&](size_t begin, size_t end) {
    try {
      for (size_t i = begin; i < end; ++i) {
        SpectrumEntry& e = s.entries[i];
        e.word = words[i];
        const AffineIso img = evaluate_word(p, words[i]);
        if (classify(img.linear, cfg) == IsometryClass::Hyperbolic) {
          e.alpha = q_alpha(q_evaluate(qgens, words[i]),
                            null_frame(img.linear, cfg));
        } else {
          e.skipped = true;
        }
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  };
  if (n_threads <= 1) {
    work(0, words.size());
  } else {
    std::vector<std::thread> pool;
    const size_t chunk = (words.size() + n_threads - 1) / n_threads;
    for (int t = 0; t < n_threads; ++t) {
      const size_t b = t * chunk;
      const size_t e = std::min(words.size(), b + chunk);
      if (b < e) pool.emplace_back(work, b, e);
    }
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
  return s;
}

Eigen::MatrixXd alpha_functional_matrix(std::span<const LorentzMap> gens,
                                        std::span<const Word> words,
                                        const Config& cfg) {
  const int n = static_cast<int>(gens.size());
  const Mat3 j = minkowski_form();
  Eigen::MatrixXd rows(words.size(), 3 * n);
  for (size_t wi = 0; wi < words.size(); ++wi) {
    std::vector<Mat3> coeff(n, Mat3::Zero());
    Mat3 prefix = Mat3::Identity();
    for (const Syllable& s : words[wi].syllables) {
      if (s.gen < 0 || s.gen >= n)
        throw UnknownGenerator("alpha_functional_matrix: generator out of range");
      const size_t gi = static_cast<size_t>(s.gen);
      const bool inv = s.exp < 0;
      const Mat3 step = inv ? gens[gi].inverse().m : gens[gi].m;
      for (long i = 0; i < std::labs(s.exp); ++i) {
        if (inv)
          coeff[gi] -= prefix * step;
        else
          coeff[gi] += prefix;
        prefix = prefix * step;
      }
    }
    LorentzMap image;
    image.m = prefix;
    if (classify(image, cfg) != IsometryClass::Hyperbolic)
      throw NonHyperbolicWord("alpha_functional_matrix: word '" +
                              word_to_string(words[wi]) + "' is not hyperbolic");
    const Vec3 x0 = null_frame(image, cfg).x0;
    for (int g = 0; g < n; ++g)
      rows.block<1, 3>(wi, 3 * g) = (j * coeff[g].transpose() * j * x0).transpose();
  }
  return rows;
}

Real alpha_row_apply(const Eigen::RowVectorXd& row, const Cocycle& u) {
  if (row.size() != 3 * static_cast<long>(u.gen_trans.size()))
    throw MalformedInput("alpha_row_apply: size mismatch");
  Real acc = 0;
  for (size_t g = 0; g < u.gen_trans.size(); ++g) {
    const Vec3 b = row.segment<3>(3 * g).transpose();
    acc += lorentz_dot(b, u.gen_trans[g]);
  }
  return acc;
}

Vec3 x0_limit(const LorentzMap& g, const LorentzMap& h, const Config& cfg) {
  const NullFrame fg = null_frame(g, cfg);
  const NullFrame fh = null_frame(h, cfg);
  const Real d = lorentz_dot(fg.xm, fh.xp);
  if (std::abs(d) <= cfg.eps_degenerate)
    throw DegeneratePair("x0_limit: shared boundary point");
  return Vec3(-box(fg.xm, fh.xp) / d);
}

AsymptoticData kappa_data(const AffineIso& gamma, const AffineIso& eta,
                          const Config& cfg) {
  const NullFrame fg = null_frame(gamma.linear, cfg);
  const NullFrame fh = null_frame(eta.linear, cfg);
  for (const Vec3* a : {&fg.xm, &fg.xp})
    for (const Vec3* b : {&fh.xm, &fh.xp})
      if ((*a - *b).norm() < cfg.eps_degenerate)
        throw DegeneratePair("kappa_data: generators share a fixed direction");

  AsymptoticData data;
  data.x0_gh = x0_limit(gamma.linear, eta.linear, cfg);
  data.lambda_g = fg.lambda;
  data.lambda_h = fh.lambda;
  data.alpha_g = margulis_invariant(gamma, cfg);
  data.alpha_h = margulis_invariant(eta, cfg);
  data.inner_xm_h = lorentz_dot(fh.xm, data.x0_gh);

  const InvariantLine lg = invariant_line(gamma, cfg);
  const InvariantLine lh = invariant_line(eta, cfg);
  Mat3 sys;
  sys.col(0) = lg.dir;
  sys.col(1) = -lh.dir;
  sys.col(2) = -fh.xm;
  const Eigen::JacobiSVD<Mat3> svd(sys, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Real smin = svd.singularValues()(2);
  if (smin <= 0 || svd.singularValues()(0) / smin > cfg.cond_guard)
    throw ParallelNoIntersect("kappa_data: line nearly parallel to the plane");
  const Vec3 sol = svd.solve(Vec3(lh.point - lg.point));
  data.kappa = sol(2);
  return data;
}

Real asymptotic_alpha(const AsymptoticData& data, int m, int n) {
  return m * data.alpha_g + n * data.alpha_h +
         data.kappa * (std::pow(data.lambda_h, n) - Real(1)) * data.inner_xm_h;
}

Real alpha_power_word(const AffineIso& gamma, const AffineIso& eta, int n, int m) {
  const QAffine w = qword(gamma, eta, n, m);
  const NullFrame seed = null_frame(word_map(gamma, eta, n, m));
  const QFrame f = qframe(w, seed);
  return static_cast<Real>(lorentz_dot(w.v, f.x0));
}

Real estimate_kappa(const AffineIso& gamma, const AffineIso& eta, int n, int m,
                    const Config& cfg) {
  const NullFrame fg = null_frame(gamma.linear, cfg);
  const NullFrame fh = null_frame(eta.linear, cfg);
  const Real alpha_g = margulis_invariant(gamma, cfg);
  const Real alpha_h = margulis_invariant(eta, cfg);

  const QAffine w = qword(gamma, eta, n, m);
  const NullFrame seed = null_frame(word_map(gamma, eta, n, m));
  const QFrame f = qframe(w, seed);

  const Quad alpha_w = lorentz_dot(w.v, f.x0);
  const Quad dot_g = lorentz_dot(to_quad(fg.x0), f.x0);
  const Quad dot_h = lorentz_dot(to_quad(fh.x0), f.x0);
  const Quad dot_m = lorentz_dot(to_quad(fh.xm), f.x0);
  Quad lam_n = 1;
  for (int i = 0; i < n; ++i) lam_n *= Quad(fh.lambda);
  const Quad denom = (lam_n - Quad(1)) * dot_m;
  if (fabsq(denom) < Quad(cfg.eps_degenerate))
    throw DegeneratePair("estimate_kappa: degenerate displacement pairing");
  const Quad k =
      (alpha_w - Quad(m) * Quad(alpha_g) * dot_g - Quad(n) * Quad(alpha_h) * dot_h) /
      denom;
  return static_cast<Real>(k);
}

std::vector<std::pair<int, Real>> convergence_report(const LorentzMap& g,
                                                     const Vec3& v, int n_max,
                                                     const Config& cfg) {
  const NullFrame f = null_frame(g, cfg);
  require_finite(v, "convergence_report");
  if (std::abs(v.norm() - Real(1)) > 1e-9)
    throw MalformedInput("convergence_report: start vector must be Euclidean-unit");
  if (v(2) <= 0 || lorentz_quadrance(v) > cfg.eps_null)
    throw MalformedInput("convergence_report: start vector must be future null/timelike");
  if ((v - f.xm).norm() < cfg.eps_repeller)
    throw StartAtRepeller("convergence_report: start on the repelling ray");
  std::vector<std::pair<int, Real>> out;
  out.reserve(n_max + 1);
  Vec3 w = v;
  out.emplace_back(0, (w - f.xp).norm());
  for (int k = 1; k <= n_max; ++k) {
    w = projective_action(g, w, cfg);
    out.emplace_back(k, (w - f.xp).norm());
  }
  return out;
}

std::pair<Real, Real> frame_distance_report(const LorentzMap& g,
                                            const LorentzMap& h,
                                            const Config& cfg) {
  const NullFrame fg = null_frame(g, cfg);
  const NullFrame fh = null_frame(h, cfg);
  const Real d_pm =
      std::max((fg.xm - fh.xm).norm(), (fg.xp - fh.xp).norm());
  return {d_pm, (fg.x0 - fh.x0).norm()};
}

}  // namespace margulis
