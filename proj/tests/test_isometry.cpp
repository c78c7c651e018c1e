#include <doctest.h>

#include "margulis/isometry.hpp"
#include "test_support.hpp"

using namespace margulis;
using margulis::testing::beta;
using margulis::testing::x0_kernel_oracle;

TEST_CASE("from_matrix validates the form and sets flags") {
  CHECK(LorentzMap::from_matrix(boost_map(0.7).m).restricted());
  CHECK(LorentzMap::from_matrix(rotation_map(1.0).m).restricted());
  Mat3 bad = Mat3::Identity();
  bad(0, 1) = 0.5;
  CHECK_THROWS_AS(LorentzMap::from_matrix(bad), NotLorentz);

  Mat3 refl = Mat3::Identity();
  refl(1, 1) = -1;
  const LorentzMap r = LorentzMap::from_matrix(refl);
  CHECK(r.det_sign == -1);
  CHECK(r.time_sign == 1);
  CHECK_FALSE(r.restricted());

  Mat3 flip = Mat3::Identity();
  flip(1, 1) = -1;
  flip(2, 2) = -1;
  const LorentzMap t = LorentzMap::from_matrix(flip);
  CHECK(t.det_sign == 1);
  CHECK(t.time_sign == -1);
}

TEST_CASE("classification by trace") {
  CHECK(classify(boost_map(std::log(2.0))) == IsometryClass::Hyperbolic);
  CHECK(boost_map(std::log(2.0)).m.trace() == doctest::Approx(3.5).epsilon(1e-15));
  CHECK(classify(LorentzMap{}) == IsometryClass::Identity);
  CHECK(classify(rotation_map(std::numbers::pi / 2)) == IsometryClass::Elliptic);
  CHECK(classify(boost_map(1e-7)) == IsometryClass::Parabolic);

  Mat3 refl = Mat3::Identity();
  refl(1, 1) = -1;
  CHECK_THROWS_AS(classify(LorentzMap::from_matrix(refl)), NotLorentz);
}

TEST_CASE("canonical one-parameter subgroups") {
  CHECK((boost_map(0).m - Mat3::Identity()).norm() == 0.0);
  CHECK((boost_map(std::log(2.0)).m * Vec3(0, 1, 1) - Vec3(0, 2, 2)).norm() < 1e-14);
  CHECK((rotation_map(std::numbers::pi).m * Vec3(1, 0, 0) - Vec3(-1, 0, 0)).norm() <
        1e-15);
}

TEST_CASE("null frame of the standard boost") {
  const NullFrame f = null_frame(boost_map(std::log(2.0)));
  const Real b = beta();
  CHECK((f.xm - Vec3(0, -b, b)).norm() < 1e-14);
  CHECK((f.xp - Vec3(0, b, b)).norm() < 1e-14);
  CHECK((f.x0 - Vec3(-1, 0, 0)).norm() < 1e-14);
  CHECK(f.lambda == doctest::Approx(0.5).epsilon(1e-14));
  CHECK_FALSE(f.near_parabolic);
}

TEST_CASE("null frame invariants on random hyperbolics") {
  Rng rng(21);
  const Config& cfg = default_config();
  for (int i = 0; i < 100; ++i) {
    const LorentzMap g = random_hyperbolic(rng, 0.2, 0.8);
    const NullFrame f = null_frame(g);
    CHECK(std::abs(lorentz_dot(f.x0, f.x0) - 1) < 1e-11);
    CHECK(std::abs(f.xm.norm() - 1) < 1e-12);
    CHECK(std::abs(f.xp.norm() - 1) < 1e-12);
    CHECK(f.xm(2) > 0);
    CHECK(f.xp(2) > 0);
    Mat3 frame;
    frame.col(0) = f.x0;
    frame.col(1) = f.xm;
    frame.col(2) = f.xp;
    CHECK(frame.determinant() > 0);
    CHECK((g.m * f.xm - f.lambda * f.xm).norm() < cfg.eps_eig);
    CHECK((g.m * f.xp - f.xp / f.lambda).norm() < cfg.eps_eig * 10);
    CHECK((g.m * f.x0 - f.x0).norm() < cfg.eps_eig);
    // eigen-route fixed vector matches the cross-product reconstruction
    CHECK((f.x0 - x0_kernel_oracle(g.m, f.xm, f.xp)).norm() < 1e-10);
    // the structural identities of the frame
    CHECK((box(f.x0, f.xp) - f.xp).norm() < 1e-10);
    CHECK((box(f.xm, f.x0) - f.xm).norm() < 1e-10);
  }
}

TEST_CASE("frame of the inverse") {
  Rng rng(22);
  for (int i = 0; i < 20; ++i) {
    const LorentzMap g = random_hyperbolic(rng, 0.25, 0.75);
    const NullFrame f = null_frame(g);
    const NullFrame fi = null_frame(g.inverse());
    CHECK((fi.x0 + f.x0).norm() < 1e-10);
    CHECK((fi.xm - f.xp).norm() < 1e-10);
    CHECK((fi.xp - f.xm).norm() < 1e-10);
    CHECK(fi.lambda == doctest::Approx(f.lambda).epsilon(1e-12));
  }
}

TEST_CASE("frame transport under conjugation") {
  Rng rng(23);
  for (int i = 0; i < 40; ++i) {
    const LorentzMap g = random_hyperbolic(rng, 0.25, 0.75);
    const LorentzMap f = random_lorentz(rng);
    const NullFrame base = null_frame(g);
    const NullFrame conj = null_frame(f * g * f.inverse());
    CHECK((conj.xm - (f.m * base.xm).normalized()).norm() < 1e-8);
    CHECK((conj.xp - (f.m * base.xp).normalized()).norm() < 1e-8);
    CHECK(conj.lambda == doctest::Approx(base.lambda).epsilon(1e-10));
  }
}

TEST_CASE("near-parabolic conditioning flag") {
  const LorentzMap g = boost_map(3e-3);  // trace - 3 about 9e-6
  CHECK(classify(g) == IsometryClass::Hyperbolic);
  CHECK(null_frame(g).near_parabolic);
  CHECK_FALSE(null_frame(boost_map(0.5)).near_parabolic);
  CHECK_THROWS_AS(null_frame(rotation_map(1.0)), NotHyperbolic);
}

TEST_CASE("from_frame rebuilds the element") {
  Rng rng(24);
  for (int i = 0; i < 30; ++i) {
    const LorentzMap g = random_hyperbolic(rng, 0.2, 0.8);
    const NullFrame f = null_frame(g);
    const LorentzMap rebuilt = from_frame(f.xm, f.xp, f.lambda);
    CHECK((rebuilt.m - g.m).cwiseAbs().maxCoeff() < 1e-9 * (1 + g.m.norm()));
  }
  CHECK_THROWS_AS(from_frame(Vec3(0, 1, 1), Vec3(0, 1, 1), 0.5), DegeneratePair);
  CHECK_THROWS_AS(from_frame(Vec3(0, 1, 1), Vec3(0, -1, 1), 1.5), MalformedInput);
}

TEST_CASE("triple conjugator") {
  Rng rng(25);
  const auto random_triple = [&rng]() {
    // separated boundary directions
    std::array<Vec3, 3> t;
    Real base = rng.uniform(0, 2);
    for (int i = 0; i < 3; ++i) {
      base += rng.uniform(0.4, 1.6);
      t[static_cast<size_t>(i)] =
          Vec3(std::cos(base), std::sin(base), 1) / std::sqrt(2.0);
    }
    return t;
  };

  SUBCASE("identity on equal triples") {
    const auto t = random_triple();
    const LorentzMap f = triple_conjugator(t, t);
    CHECK((f.m - Mat3::Identity()).cwiseAbs().maxCoeff() < 1e-10);
  }

  SUBCASE("recovers a known boost") {
    const LorentzMap b = boost_map(0.8);
    const auto src = random_triple();
    std::array<Vec3, 3> dst;
    for (int i = 0; i < 3; ++i)
      dst[static_cast<size_t>(i)] = (b.m * src[static_cast<size_t>(i)]).normalized();
    const LorentzMap f = triple_conjugator(src, dst);
    CHECK((f.m - b.m).cwiseAbs().maxCoeff() < 1e-9);
  }

  SUBCASE("postcondition on random separated triples") {
    for (int i = 0; i < 50; ++i) {
      const auto src = random_triple();
      const auto dst = random_triple();
      const LorentzMap f = triple_conjugator(src, dst);
      CHECK(f.orthogonality_defect() < 1e-10);
      CHECK(f.time_sign == 1);
      for (int k = 0; k < 3; ++k) {
        const Vec3 image = (f.m * src[static_cast<size_t>(k)]).normalized();
        CHECK((image - dst[static_cast<size_t>(k)]).norm() < 1e-8);
      }
    }
  }

  SUBCASE("orientation-reversing targets are reachable") {
    const auto src = random_triple();
    auto dst = src;
    std::swap(dst[1], dst[2]);
    const LorentzMap f = triple_conjugator(src, dst);
    CHECK(f.det_sign == -1);
  }

  SUBCASE("degenerate triples are rejected") {
    auto src = random_triple();
    src[1] = src[0];
    CHECK_THROWS_AS(triple_conjugator(src, random_triple()), DegenerateTriple);
  }
}

TEST_CASE("projective action") {
  const LorentzMap g = boost_map(std::log(2.0));
  const NullFrame f = null_frame(g);
  CHECK((projective_action(g, f.xp) - f.xp).norm() < 1e-14);
  const Vec3 eigen = Vec3(0, 1, 1).normalized();
  CHECK((projective_action(g, eigen) - eigen).norm() < 1e-14);

  // generic starts reach any neighborhood of the attractor
  Rng rng(26);
  for (int i = 0; i < 10; ++i) {
    Vec3 v = random_future_unit(rng);
    if ((v - f.xm).norm() < 0.1) continue;
    int n = 0;
    while ((v - f.xp).norm() > 1e-6 && n < 200) {
      v = projective_action(g, v);
      ++n;
    }
    CHECK((v - f.xp).norm() <= 1e-6);
  }
}
