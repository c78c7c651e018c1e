#include "margulis/isometry.hpp"

#include <cmath>

namespace margulis {

namespace {

// Direction of the (one-dimensional) kernel of A: the largest of the three
// pairwise row cross products.
Vec3 kernel_direction(const Mat3& a) {
  const Vec3 r0 = a.row(0), r1 = a.row(1), r2 = a.row(2);
  Vec3 best = r0.cross(r1);
  Vec3 c = r0.cross(r2);
  if (c.squaredNorm() > best.squaredNorm()) best = c;
  c = r1.cross(r2);
  if (c.squaredNorm() > best.squaredNorm()) best = c;
  return best;
}

Mat3 lorentz_adjoint(const Mat3& m) {
  const Mat3 j = minkowski_form();
  return j * m.transpose() * j;
}

}  // namespace

Real LorentzMap::orthogonality_defect() const {
  const Mat3 j = minkowski_form();
  const Real raw = (m.transpose() * j * m - j).cwiseAbs().maxCoeff();
  return raw / std::max(Real(1), m.squaredNorm());
}

LorentzMap LorentzMap::from_matrix(const Mat3& m, const Config& cfg) {
  if (!m.allFinite()) throw MalformedInput("LorentzMap: non-finite matrix");
  LorentzMap g;
  g.m = m;
  if (g.orthogonality_defect() > cfg.eps_orth)
    throw NotLorentz("matrix does not preserve the Lorentzian form");
  g.det_sign = m.determinant() > 0 ? 1 : -1;
  g.time_sign = m(2, 2) > 0 ? 1 : -1;
  return g;
}

LorentzMap LorentzMap::inverse() const {
  LorentzMap g;
  g.m = lorentz_adjoint(m);
  g.det_sign = det_sign;
  g.time_sign = time_sign;
  return g;
}

LorentzMap LorentzMap::operator*(const LorentzMap& rhs) const {
  LorentzMap g;
  g.m = m * rhs.m;
  g.det_sign = det_sign * rhs.det_sign;
  g.time_sign = time_sign * rhs.time_sign;
  return g;
}

IsometryClass classify(const LorentzMap& g, const Config& cfg) {
  if (!g.restricted())
    throw NotLorentz("classification requires an element of SO(2,1)^0");
  if ((g.m - Mat3::Identity()).cwiseAbs().maxCoeff() <= cfg.eps_identity)
    return IsometryClass::Identity;
  const Real tr = g.m.trace();
  if (tr > Real(3) + cfg.eps_trace) return IsometryClass::Hyperbolic;
  if (tr < Real(3) - cfg.eps_trace) return IsometryClass::Elliptic;
  return IsometryClass::Parabolic;
}

bool is_hyperbolic(const LorentzMap& g, const Config& cfg) {
  return g.restricted() && classify(g, cfg) == IsometryClass::Hyperbolic;
}

LorentzMap boost_map(Real t) {
  const Real c = std::cosh(t), s = std::sinh(t);
  LorentzMap g;
  g.m << 1, 0, 0,
         0, c, s,
         0, s, c;
  return g;
}

LorentzMap rotation_map(Real theta) {
  const Real c = std::cos(theta), s = std::sin(theta);
  LorentzMap g;
  g.m << c, -s, 0,
         s, c, 0,
         0, 0, 1;
  return g;
}

NullFrame null_frame(const LorentzMap& g, const Config& cfg) {
  if (classify(g, cfg) != IsometryClass::Hyperbolic)
    throw NotHyperbolic("null frame requires a hyperbolic element");
  NullFrame f;
  const Real tr = g.m.trace();
  const Real s = tr - Real(1);
  // smallest eigenvalue of {lambda, 1, 1/lambda}; cancellation-free form
  f.lambda = Real(2) / (s + std::sqrt((s - Real(2)) * (s + Real(2))));
  f.near_parabolic = (tr - Real(3)) < cfg.near_parabolic_trace;

  Vec3 xp = kernel_direction(g.m - (Real(1) / f.lambda) * Mat3::Identity());
  Vec3 xm = kernel_direction(g.m - f.lambda * Mat3::Identity());
  // A few normalized applications push the extracted directions onto the
  // numerically exact eigenrays; the contraction makes this effective even
  // for products with extreme entries.
  const Mat3 gi = lorentz_adjoint(g.m);
  for (int i = 0; i < cfg.frame_refine_steps; ++i) {
    xp = (g.m * xp).normalized();
    xm = (gi * xm).normalized();
  }
  if (xm(2) < 0) xm = -xm;
  if (xp(2) < 0) xp = -xp;
  f.xm = xm;
  f.xp = xp;
  // Unit-spacelike fixed vector with det[x0|xm|xp] > 0; the cross-product
  // reconstruction carries exactly the accuracy of xm and xp.
  f.x0 = -box(xm, xp) / lorentz_dot(xm, xp);
  return f;
}

Vec3 null_normalize(const Vec3& v) {
  require_finite(v, "null_normalize");
  const Real r = std::hypot(v(0), v(1));
  if (r <= 0 || v(2) <= 0)
    throw MalformedInput("null_normalize: not a future-pointing direction");
  Vec3 w(v(0) / r, v(1) / r, Real(1));
  return w / std::sqrt(Real(2));
}

LorentzMap from_frame(const Vec3& xm_in, const Vec3& xp_in, Real lambda,
                      const Config& cfg) {
  if (!(lambda > 0 && lambda < 1))
    throw MalformedInput("from_frame: lambda must lie in (0,1)");
  const Vec3 xm = null_normalize(xm_in);
  const Vec3 xp = null_normalize(xp_in);
  const Real d = lorentz_dot(xm, xp);
  if (std::abs(d) <= cfg.eps_degenerate)
    throw DegeneratePair("from_frame: coinciding eigen-directions");
  const Vec3 x0 = -box(xm, xp) / d;
  Mat3 p;
  p.col(0) = x0;
  p.col(1) = xm;
  p.col(2) = xp;
  Mat3 diag = Mat3::Zero();
  diag(0, 0) = Real(1);
  diag(1, 1) = lambda;
  diag(2, 2) = Real(1) / lambda;
  const Mat3 m = p * diag * p.partialPivLu().inverse();
  LorentzMap g;
  g.m = m;
  g.det_sign = 1;
  g.time_sign = 1;
  if (g.orthogonality_defect() > Real(1e3) * cfg.eps_orth)
    throw NotLorentz("from_frame: eigen-data too degenerate");
  return g;
}

LorentzMap triple_conjugator(const std::array<Vec3, 3>& src,
                             const std::array<Vec3, 3>& dst,
                             const Config& cfg) {
  std::array<Vec3, 3> v, w;
  bool same = true;
  for (int i = 0; i < 3; ++i) {
    v[i] = null_normalize(src[i]);
    w[i] = null_normalize(dst[i]);
    same = same && v[i] == w[i];
  }
  if (same) return LorentzMap{};
  Real p[3][3], q[3][3];
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      p[i][j] = lorentz_dot(v[i], v[j]);
      q[i][j] = lorentz_dot(w[i], w[j]);
      if (std::abs(p[i][j]) <= cfg.eps_degenerate ||
          std::abs(q[i][j]) <= cfg.eps_degenerate)
        throw DegenerateTriple("triple_conjugator: coinciding directions");
    }
  // Scales making the image triple isometric to the source triple.  All the
  // pairings are negative, so the radicand is positive and the scales come
  // out positive, i.e. the future cone is preserved.
  const Real c0 = std::sqrt((p[0][1] * p[0][2] * q[1][2]) /
                            (q[0][1] * q[0][2] * p[1][2]));
  const Real c1 = p[0][1] / (q[0][1] * c0);
  const Real c2 = p[0][2] / (q[0][2] * c0);
  Mat3 a, b;
  a.col(0) = v[0];
  a.col(1) = v[1];
  a.col(2) = v[2];
  b.col(0) = c0 * w[0];
  b.col(1) = c1 * w[1];
  b.col(2) = c2 * w[2];
  Mat3 f = b * a.partialPivLu().inverse();

  const Mat3 j = minkowski_form();
  for (int it = 0; it < 3; ++it) {
    const Real defect = (f.transpose() * j * f - j).cwiseAbs().maxCoeff();
    if (defect <= Real(1e-14)) break;
    if (defect > Real(0.5))
      throw DegenerateTriple("triple_conjugator: triple too close to degenerate");
    // Newton-Schulz step toward the J-orthogonal polar factor
    f = Real(0.5) * f * (Real(3) * Mat3::Identity() - lorentz_adjoint(f) * f);
  }

  LorentzMap g;
  g.m = f;
  g.det_sign = f.determinant() > 0 ? 1 : -1;
  g.time_sign = f(2, 2) > 0 ? 1 : -1;
  if (g.orthogonality_defect() > Real(1e3) * cfg.eps_orth)
    throw DegenerateTriple("triple_conjugator: result failed the form check");
  return g;
}

Vec3 projective_action(const LorentzMap& g, const Vec3& v, const Config& cfg) {
  require_finite(v, "projective_action");
  const Vec3 image = g.m * v;
  const Real n = image.norm();
  if (n <= cfg.eps_null) throw ZeroImage("projective_action: zero image");
  return image / n;
}

}  // namespace margulis
