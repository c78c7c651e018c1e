#pragma once

#include "margulis/types.hpp"

namespace margulis {

/// The bilinear form x1*y1 + x2*y2 - x3*y3 as a matrix, diag(1, 1, -1).
inline Mat3 minkowski_form() {
  Mat3 j = Mat3::Identity();
  j(2, 2) = Real(-1);
  return j;
}

/// Scalar product of signature (+, +, -).  Works on any 3-vector expression,
/// including non-double scalars.
template <typename A, typename B>
typename A::Scalar lorentz_dot(const Eigen::MatrixBase<A>& x,
                               const Eigen::MatrixBase<B>& y) {
  return x(0) * y(0) + x(1) * y(1) - x(2) * y(2);
}

template <typename A>
typename A::Scalar lorentz_quadrance(const Eigen::MatrixBase<A>& v) {
  return lorentz_dot(v, v);
}

/// Lorentzian cross product: the unique bilinear map with
/// <u, box(v, w)> = det[u v w] for every u.  Expanding the identity on the
/// standard basis gives the Euclidean cross product with a flipped third
/// coordinate.
template <typename A, typename B>
Eigen::Matrix<typename A::Scalar, 3, 1> box(const Eigen::MatrixBase<A>& v,
                                            const Eigen::MatrixBase<B>& w) {
  Eigen::Matrix<typename A::Scalar, 3, 1> c = v.cross(w);
  c(2) = -c(2);
  return c;
}

enum class CausalClass {
  Zero,
  Spacelike,
  TimelikeFuture,
  TimelikePast,
  NullFuture,
  NullPast,
};

/// Sign classification of <v, v>, with future/past split on the third
/// coordinate.  Nullity is judged relative to the Euclidean norm squared.
inline CausalClass causal_class(const Vec3& v, Real eps) {
  const Real en2 = v.squaredNorm();
  if (std::sqrt(en2) <= eps) return CausalClass::Zero;
  const Real q = lorentz_quadrance(v);
  if (std::abs(q) <= eps * en2)
    return v(2) > 0 ? CausalClass::NullFuture : CausalClass::NullPast;
  if (q > 0) return CausalClass::Spacelike;
  return v(2) > 0 ? CausalClass::TimelikeFuture : CausalClass::TimelikePast;
}

inline CausalClass causal_class(const Vec3& v) {
  return causal_class(v, default_config().eps_null);
}

inline bool is_future_null(const Vec3& v, Real eps) {
  return causal_class(v, eps) == CausalClass::NullFuture;
}

inline void require_finite(const Vec3& v, const char* what) {
  if (!v.allFinite()) throw MalformedInput(std::string(what) + ": non-finite vector");
}

}  // namespace margulis
