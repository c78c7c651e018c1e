#include "margulis/affine.hpp"

namespace margulis {

Mat4 AffineIso::homogeneous() const {
  Mat4 h = Mat4::Zero();
  h.topLeftCorner<3, 3>() = linear.m;
  h.topRightCorner<3, 1>() = trans;
  h(3, 3) = Real(1);
  return h;
}

AffineIso affine_pow(const AffineIso& g, long n) {
  if (n == 0) return AffineIso::identity();
  AffineIso base = n > 0 ? g : g.inverse();
  unsigned long k = n > 0 ? static_cast<unsigned long>(n)
                          : static_cast<unsigned long>(-(n + 1)) + 1ul;
  AffineIso acc = AffineIso::identity();
  while (k > 0) {
    if (k & 1ul) acc = acc * base;
    base = base * base;
    k >>= 1;
  }
  return acc;
}

InvariantLine invariant_line(const AffineIso& g, const Config& cfg) {
  const NullFrame f = null_frame(g.linear, cfg);
  // Split the translation off the fixed direction; the remainder lies in
  // span{xm, xp}, where g - id is invertible with eigenvalues lambda - 1 and
  // 1/lambda - 1.
  const Real a = lorentz_dot(g.trans, f.x0);
  const Vec3 w = g.trans - a * f.x0;
  const Real d = lorentz_dot(f.xm, f.xp);
  const Real b = lorentz_dot(w, f.xp) / d;
  const Real c = lorentz_dot(w, f.xm) / d;
  InvariantLine line;
  line.point = -b / (f.lambda - Real(1)) * f.xm -
               c / (Real(1) / f.lambda - Real(1)) * f.xp;
  line.dir = f.x0;
  return line;
}

Real margulis_invariant(const AffineIso& g, const Config& cfg) {
  const NullFrame f = null_frame(g.linear, cfg);
  return lorentz_dot(g.trans, f.x0);
}

RadiancePoint radiant_least_squares(std::span<const AffineIso> gens) {
  if (gens.empty()) throw MalformedInput("radiant_least_squares: no generators");
  const long rows = 3 * static_cast<long>(gens.size());
  Eigen::MatrixXd a(rows, 3);
  Eigen::VectorXd rhs(rows);
  for (long i = 0; i < static_cast<long>(gens.size()); ++i) {
    a.middleRows<3>(3 * i) = Mat3::Identity() - gens[i].linear.m;
    rhs.segment<3>(3 * i) = gens[i].trans;
  }
  const Eigen::VectorXd x = a.colPivHouseholderQr().solve(rhs);
  return RadiancePoint{Vec3(x), (a * x - rhs).norm()};
}

std::optional<Vec3> is_radiant(std::span<const AffineIso> gens, Real tol) {
  const RadiancePoint sol = radiant_least_squares(gens);
  if (sol.residual < tol) return sol.point;
  return std::nullopt;
}

}  // namespace margulis
