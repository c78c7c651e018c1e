#include <doctest.h>

#include <cmath>
#include <numbers>

#include "margulis/spectrum.hpp"
#include "test_support.hpp"

using namespace margulis;
using margulis::testing::beta;

namespace {
constexpr Real kPi = std::numbers::pi_v<Real>;

Presentation schottky_deformation(std::uint64_t seed, int rank = 2) {
  Rng rng(seed);
  SchottkyParams params;
  params.rank = rank;
  return random_schottky_deformation(params, rng);
}
}  // namespace

TEST_CASE("marked spectrum of a radiant group vanishes") {
  Rng rng(51);
  SchottkyParams params;
  params.t_min = 2.0;  // keep the contraction moderate: a conjugated radiant
  params.t_max = 2.3;  // group is only as exact as its stored translations
  const Presentation p = random_schottky_linear(params, rng);
  for (const auto& e : marked_spectrum(p, 6).entries) {
    CHECK_FALSE(e.skipped);
    CHECK(std::abs(e.alpha) < 1e-10);
  }
  // conjugating the fixed point away from the origin changes nothing
  Presentation moved = p;
  const AffineIso tau = translation_iso(Vec3(0.8, -0.1, 0.5));
  for (auto& g : moved.gens) g = conjugate(tau, g);
  for (const auto& e : marked_spectrum(moved, 6).entries)
    CHECK(std::abs(e.alpha) < 1e-9);
}

TEST_CASE("marked spectrum is translation-conjugation invariant") {
  const Presentation p = schottky_deformation(52);
  Presentation q = p;
  const AffineIso tau = translation_iso(Vec3(0.7, -0.3, 1.1));
  for (auto& g : q.gens) g = conjugate(tau, g);

  const Spectrum sp = marked_spectrum(p, 4);
  const Spectrum sq = marked_spectrum(q, 4);
  REQUIRE(sp.entries.size() == sq.entries.size());
  for (size_t i = 0; i < sp.entries.size(); ++i) {
    CHECK(sp.entries[i].word == sq.entries[i].word);
    CHECK(std::abs(sp.entries[i].alpha - sq.entries[i].alpha) < 1e-8);
  }
}

TEST_CASE("single-generator spectrum grows linearly") {
  Presentation p;
  p.gens = {AffineIso{boost_map(std::log(2.0)), Vec3(-1, 0, 0)}};
  p.orders = {std::nullopt};
  const Spectrum s = marked_spectrum(p, 3);
  REQUIRE(s.entries.size() == 6);
  const Real expected[] = {1, 1, 2, 2, 3, 3};
  for (size_t i = 0; i < 6; ++i)
    CHECK(s.entries[i].alpha == doctest::Approx(expected[i]).epsilon(1e-12));
}

TEST_CASE("non-hyperbolic words are skipped, not dropped") {
  Presentation p;
  p.gens = {AffineIso{rotation_map(2 * kPi / 5), Vec3::Zero()},
            AffineIso{boost_map(2.0), Vec3(0.2, 0, 0)}};
  p.orders = {5, std::nullopt};
  const Spectrum s = marked_spectrum(p, 2);
  bool skipped_some = false, kept_some = false;
  for (const auto& e : s.entries) {
    skipped_some |= e.skipped;
    kept_some |= !e.skipped;
  }
  CHECK(skipped_some);
  CHECK(kept_some);
}

TEST_CASE("spectrum is deterministic across thread budgets") {
  const Presentation p = schottky_deformation(53);
  setenv("MARGULIS_THREADS", "1", 1);
  const Spectrum s1 = marked_spectrum(p, 4);
  setenv("MARGULIS_THREADS", "4", 1);
  const Spectrum s4 = marked_spectrum(p, 4);
  unsetenv("MARGULIS_THREADS");
  REQUIRE(s1.entries.size() == s4.entries.size());
  for (size_t i = 0; i < s1.entries.size(); ++i)
    CHECK(s1.entries[i].alpha == s4.entries[i].alpha);
}

TEST_CASE("alpha functional rows") {
  const Presentation p = schottky_deformation(54);
  const auto lin = linear_parts(p);
  const Orders& ord = p.orders;

  SUBCASE("single-generator row is the frame vector") {
    const std::array words{parse_word("g2", 2, ord)};
    const Eigen::MatrixXd rows = alpha_functional_matrix(lin, words);
    const Vec3 x0 = null_frame(lin[1]).x0;
    CHECK(rows.block<1, 3>(0, 0).norm() < 1e-12);
    CHECK((rows.block<1, 3>(0, 3).transpose() - x0).norm() < 1e-10);
  }

  SUBCASE("inverse-generator row equals the direct one") {
    const std::array words{parse_word("g1", 2, ord), parse_word("g1^-1", 2, ord)};
    const Eigen::MatrixXd rows = alpha_functional_matrix(lin, words);
    CHECK((rows.row(0) - rows.row(1)).norm() < 1e-10);
  }

  SUBCASE("rows reproduce the invariant of the deformed word") {
    Rng rng(55);
    const auto words = enumerate_words(2, ord, 3);
    const Eigen::MatrixXd rows = alpha_functional_matrix(lin, words);
    for (int trial = 0; trial < 5; ++trial) {
      Cocycle u;
      u.gen_trans = {random_vec(rng, 1), random_vec(rng, 1)};
      const Presentation deformed = with_cocycle(linear_presentation(lin), u);
      for (size_t i = 0; i < words.size(); ++i) {
        const Real via_row = alpha_row_apply(rows.row(i), u);
        const Real direct = margulis_invariant(evaluate_word(deformed, words[i]));
        CHECK(std::abs(via_row - direct) < 1e-10 * (1 + std::abs(direct)));
      }
    }
  }

  SUBCASE("non-hyperbolic words are rejected") {
    Presentation elliptic;
    elliptic.gens = {AffineIso{rotation_map(1.0), Vec3::Zero()}};
    elliptic.orders = {std::nullopt};
    const std::array words{parse_word("g1", 1, elliptic.orders)};
    CHECK_THROWS_AS(
        alpha_functional_matrix(linear_parts(elliptic), words),
        NonHyperbolicWord);
  }
}

TEST_CASE("limit of the word fixed vectors") {
  const Presentation p = schottky_deformation(56);
  const auto lin = linear_parts(p);

  SUBCASE("same element reproduces its own fixed vector") {
    const Vec3 x = x0_limit(lin[0], lin[0]);
    CHECK((x - null_frame(lin[0]).x0).norm() < 1e-12);
  }

  SUBCASE("pairings with the generator fixed vectors equal one") {
    const Vec3 x = x0_limit(lin[0], lin[1]);
    CHECK(std::abs(lorentz_dot(null_frame(lin[0]).x0, x) - 1) < 1e-9);
    CHECK(std::abs(lorentz_dot(null_frame(lin[1]).x0, x) - 1) < 1e-9);
    CHECK(std::abs(lorentz_dot(x, x) - 1) < 1e-10);
  }

  SUBCASE("degenerate pairs are rejected") {
    CHECK_THROWS_AS(x0_limit(lin[0], lin[0].inverse()), DegeneratePair);
  }

  SUBCASE("word fixed vectors approach the limit geometrically") {
    const Vec3 limit = x0_limit(lin[0], lin[1]);
    Real prev = 1e9;
    for (int k : {2, 4, 6}) {
      const LorentzMap word =
          (affine_pow(AffineIso{lin[1], Vec3::Zero()}, k) *
           affine_pow(AffineIso{lin[0], Vec3::Zero()}, k))
              .linear;
      const Real d = (null_frame(word).x0 - limit).norm();
      CHECK(d < prev * 0.5);
      prev = d;
    }
  }
}

TEST_CASE("displacement coefficient: geometry vs spectral estimate") {
  for (std::uint64_t seed : {61u, 62u, 63u}) {
    const Presentation p = schottky_deformation(seed);
    const AffineIso &gamma = p.gens[0], &eta = p.gens[1];
    const AsymptoticData data = kappa_data(gamma, eta);
    const Real est = estimate_kappa(gamma, eta);
    CHECK(std::abs(data.kappa - est) < 1e-8);
    CHECK(std::abs(lorentz_dot(data.x0_gh, data.x0_gh) - 1) < 1e-10);
  }
}

TEST_CASE("displacement coefficient vanishes for crossing lines") {
  // both invariant lines pass through the origin
  const AffineIso gamma{boost_map(std::log(2.0)), Vec3::Zero()};
  const AffineIso eta{rotation_map(kPi / 2) * boost_map(std::log(2.0)) *
                          rotation_map(-kPi / 2),
                      Vec3::Zero()};
  CHECK(std::abs(kappa_data(gamma, eta).kappa) < 1e-12);

  // translating the whole configuration leaves kappa unchanged
  const Presentation p = schottky_deformation(64);
  const AsymptoticData base = kappa_data(p.gens[0], p.gens[1]);
  const AffineIso tau = translation_iso(Vec3(1.5, -0.4, 0.2));
  const AsymptoticData moved =
      kappa_data(conjugate(tau, p.gens[0]), conjugate(tau, p.gens[1]));
  CHECK(std::abs(base.kappa - moved.kappa) < 1e-9);
}

TEST_CASE("asymptotic invariant growth") {
  const Presentation p = schottky_deformation(65);
  const AsymptoticData data = kappa_data(p.gens[0], p.gens[1]);

  CHECK(asymptotic_alpha(data, 0, 0) == 0.0);

  AsymptoticData flat = data;
  flat.kappa = 0;
  CHECK(asymptotic_alpha(flat, 3, 5) ==
        doctest::Approx(3 * data.alpha_g + 5 * data.alpha_h).epsilon(1e-14));

  // residuals against the exact invariant shrink along the diagonal
  Real prev = 1e9;
  for (int k : {2, 4, 6, 8}) {
    const Real exact = alpha_power_word(p.gens[0], p.gens[1], k, k);
    const Real resid = std::abs(exact - asymptotic_alpha(data, k, k));
    CHECK(resid < prev);
    prev = resid;
  }
}

TEST_CASE("projective convergence report reproduces the closed form") {
  const Real b = beta();
  const Real lambda = 0.5;
  const LorentzMap g = boost_map(std::log(lambda));  // contracts toward [0,-b,b]
  const Vec3 start(b, 0, b);

  const auto rows = convergence_report(g, start, 20);
  REQUIRE(rows.size() == 21);
  CHECK(rows[0].second == doctest::Approx(1.0).epsilon(1e-14));
  for (const auto& [n, d] : rows) {
    const Real ln = std::pow(lambda, n);
    const Real closed = ln * std::sqrt(1 + ln * ln) / (b * (1 + ln * ln));
    CHECK(std::abs(d - closed) < 1e-10);
  }
  const Real ratio = rows[10].second / rows[9].second;
  CHECK(std::abs(ratio - lambda) < 1e-3);

  const NullFrame f = null_frame(g);
  CHECK_THROWS_AS(convergence_report(g, f.xm, 5), StartAtRepeller);
  CHECK_THROWS_AS(convergence_report(g, Vec3(2, 0, 2), 5), MalformedInput);
}

TEST_CASE("frame distance report on the tilted family") {
  const Real b = beta();
  const LorentzMap g = boost_map(std::log(0.5));
  const Vec3 xm(0, b, b), xpg(0, -b, b);

  for (const Real delta : {1e-3, 0.1, 0.5, 1.0, kPi / 2}) {
    const Vec3 xph(b * std::sin(delta), -b * std::cos(delta), b);
    const LorentzMap h = from_frame(xm, xph, 0.4);
    const auto [d_pm, d_0] = frame_distance_report(g, h);
    CHECK(std::abs(d_pm - std::sqrt(1 - std::cos(delta))) < 1e-10);
    CHECK(std::abs(d_0 - std::sqrt(2.0) * std::abs(std::sin(delta)) /
                             (1 + std::cos(delta))) < 1e-10);
  }

  // the two distances agree to first order in the tilt
  const Real delta = 1e-3;
  const Vec3 xph(b * std::sin(delta), -b * std::cos(delta), b);
  const auto [d_pm, d_0] = frame_distance_report(g, from_frame(xm, xph, 0.4));
  CHECK(std::abs(d_pm / d_0 - 1) < 1e-5);

  // right angle: frozen values
  const Vec3 xq(b, 0, b);
  const auto [rp, r0] = frame_distance_report(g, from_frame(xm, xq, 0.4));
  CHECK(rp == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r0 == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
}
