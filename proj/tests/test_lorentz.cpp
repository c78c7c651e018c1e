#include <doctest.h>

#include "margulis/lorentz.hpp"
#include "test_support.hpp"

using namespace margulis;
using margulis::testing::box_oracle;

TEST_CASE("lorentz_dot on basis vectors") {
  CHECK(lorentz_dot(Vec3(1, 0, 0), Vec3(1, 0, 0)) == 1.0);
  CHECK(lorentz_dot(Vec3(0, 1, 1), Vec3(0, 1, 1)) == 0.0);
  CHECK(lorentz_dot(Vec3(0, 0, 1), Vec3(0, 0, 1)) == -1.0);
}

TEST_CASE("lorentz_dot is symmetric and bilinear") {
  Rng rng(11);
  for (int i = 0; i < 50; ++i) {
    const Vec3 u = random_vec(rng, 2), v = random_vec(rng, 2), w = random_vec(rng, 2);
    const Real a = rng.uniform(-2, 2);
    CHECK(lorentz_dot(u, v) == doctest::Approx(lorentz_dot(v, u)).epsilon(1e-14));
    CHECK(lorentz_dot(u, a * v + w) ==
          doctest::Approx(a * lorentz_dot(u, v) + lorentz_dot(u, w)).epsilon(1e-12));
  }
}

TEST_CASE("box matches the determinant-defined oracle") {
  CHECK((box(Vec3(1, 0, 0), Vec3(0, 1, 0)) - Vec3(0, 0, -1)).norm() == 0.0);
  CHECK((box_oracle(Vec3(1, 0, 0), Vec3(0, 1, 0)) - Vec3(0, 0, -1)).norm() == 0.0);

  const Real b = margulis::testing::beta();
  CHECK((box(Vec3(0, -b, b), Vec3(0, b, b)) - Vec3(-1, 0, 0)).norm() < 1e-15);
  CHECK((box_oracle(Vec3(0, -b, b), Vec3(0, b, b)) - Vec3(-1, 0, 0)).norm() < 1e-15);

  Rng rng(7);
  for (int i = 0; i < 100; ++i) {
    const Vec3 v = random_vec(rng, 3), w = random_vec(rng, 3);
    CHECK((box(v, w) - box_oracle(v, w)).norm() < 1e-13);
    CHECK(box(v, v).norm() == 0.0);
  }
}

TEST_CASE("box product identities") {
  Rng rng(13);
  for (int i = 0; i < 200; ++i) {
    const Vec3 u = random_vec(rng, 2), v = random_vec(rng, 2), w = random_vec(rng, 2);
    const Real scale = u.norm() * v.norm() * w.norm() + 1;
    CHECK(std::abs(lorentz_dot(u, box(v, w)) - lorentz_dot(v, box(w, u))) <
          1e-10 * scale);
    CHECK(std::abs(lorentz_dot(v, box(v, w))) < 1e-10 * scale);
    const Real lhs = lorentz_dot(box(v, w), box(v, w));
    const Real rhs = lorentz_dot(v, w) * lorentz_dot(v, w) -
                     lorentz_quadrance(v) * lorentz_quadrance(w);
    CHECK(std::abs(lhs - rhs) < 1e-10 * (1 + std::abs(lhs) + std::abs(rhs)));
  }
}

TEST_CASE("causal classification") {
  const Real eps = default_config().eps_null;
  CHECK(causal_class(Vec3(0, 1, 1), eps) == CausalClass::NullFuture);
  CHECK(causal_class(Vec3(3, 0, 0), eps) == CausalClass::Spacelike);
  CHECK(causal_class(Vec3(0, 0, -2), eps) == CausalClass::TimelikePast);
  CHECK(causal_class(Vec3(0, -1, -1), eps) == CausalClass::NullPast);
  CHECK(causal_class(Vec3(0, 0, 0.5), eps) == CausalClass::TimelikeFuture);
  CHECK(causal_class(Vec3::Zero(), eps) == CausalClass::Zero);
  // almost-null within the relative tolerance
  CHECK(causal_class(Vec3(0, 1, 1 + 1e-12), eps) == CausalClass::NullFuture);
}
