#include <doctest.h>

#include <cmath>
#include <numbers>

#include "margulis/group.hpp"
#include "test_support.hpp"

using namespace margulis;

namespace {
constexpr Real kPi = std::numbers::pi_v<Real>;

Real angle_gap(Real a, Real b) {
  Real d = std::fmod(std::abs(a - b), 2 * kPi);
  return std::min(d, 2 * kPi - d);
}
}  // namespace

TEST_CASE("schottky pair construction") {
  const Presentation p = make_schottky_pair(std::log(2.0), std::log(2.0), kPi / 2);
  REQUIRE(p.rank() == 2);
  const auto lin = linear_parts(p);
  CHECK(verify_schottky(lin, default_config().schottky_margin));

  // fixed sets disjoint: non-elementary by construction
  const NullFrame f0 = null_frame(lin[0]);
  const NullFrame f1 = null_frame(lin[1]);
  for (const Vec3* a : {&f0.xm, &f0.xp})
    for (const Vec3* b : {&f1.xm, &f1.xp}) CHECK((*a - *b).norm() > 1e-8);

  CHECK_THROWS_AS(make_schottky_pair(std::log(2.0), std::log(2.0), 0.0),
                  FailedToSeparate);
  CHECK_THROWS_AS(make_schottky_pair(-1.0, 1.0, kPi / 2), MalformedInput);
}

TEST_CASE("interval verification basics") {
  const LorentzMap g = boost_map(2.1);
  const std::array single{g};
  CHECK(verify_schottky(single, 1e-3));

  const std::array self_inverse{g, g.inverse()};
  CHECK_FALSE(verify_schottky(self_inverse, 1e-3));

  const std::array not_hyp{rotation_map(1.0)};
  CHECK_THROWS_AS(verify_schottky(not_hyp, 1e-3), NotHyperbolic);
}

TEST_CASE("schottky word combinatorics") {
  const Presentation p = make_schottky_pair(std::log(2.0), std::log(3.0), kPi / 2);
  const auto lin = linear_parts(p);
  const auto intervals = find_schottky_intervals(lin, 1e-3);
  REQUIRE(intervals.has_value());

  const auto in_interval = [&](const Vec3& dir, int gen, bool attracting) {
    const SchottkyInterval& iv = intervals->per_gen[static_cast<size_t>(gen)]
                                                   [attracting ? 0 : 1];
    return angle_gap(boundary_angle(dir), iv.center) <= iv.radius + 1e-9;
  };

  const auto words = enumerate_words(2, p.orders, 4);
  for (const Word& word : words) {
    const LorentzMap img = evaluate_word(p, word).linear;
    CHECK(classify(img) == IsometryClass::Hyperbolic);
    const NullFrame f = null_frame(img);
    const Syllable first = word.syllables.front();
    const Syllable last = word.syllables.back();
    CHECK(in_interval(f.xp, first.gen, first.exp > 0));
    CHECK(in_interval(f.xm, last.gen, last.exp < 0));
  }

  // every nonempty word up to length 5 is hyperbolic
  for (const Word& word : enumerate_words(2, p.orders, 5))
    CHECK(classify(evaluate_word(p, word).linear) == IsometryClass::Hyperbolic);
}

TEST_CASE("presentation validation") {
  Presentation p;
  p.gens = {AffineIso{rotation_map(2 * kPi / 5), Vec3::Zero()}};
  p.orders = {5};
  CHECK_NOTHROW(validate_presentation(p));
  p.orders = {4};
  CHECK_THROWS_AS(validate_presentation(p), MalformedInput);
}

TEST_CASE("hyperbolization") {
  const Config& cfg = default_config();

  SUBCASE("already hyperbolic stays put") {
    const Presentation p = make_schottky_pair(std::log(2.0), std::log(2.0), kPi / 2);
    const Hyperbolization h = hyperbolize(p, p, cfg);
    REQUIRE(h.words.size() == 2);
    CHECK(word_to_string(h.words[0]) == "g1");
    CHECK(word_to_string(h.words[1]) == "g2");
  }

  SUBCASE("elliptic generator of order five") {
    Presentation p;
    const LorentzMap rot5 = rotation_map(2 * kPi / 5);
    const LorentzMap hyp = boost_map(2.0);
    p.gens = {AffineIso{rot5, Vec3::Zero()}, AffineIso{hyp, Vec3::Zero()}};
    p.orders = {5, std::nullopt};

    const Hyperbolization h = hyperbolize(p, p, cfg);
    REQUIRE(h.words.size() == 2);
    for (size_t i = 0; i < h.words.size(); ++i) {
      CHECK(classify(h.p1.gens[i].linear) == IsometryClass::Hyperbolic);
      CHECK(classify(h.p2.gens[i].linear) == IsometryClass::Hyperbolic);
      CHECK(h.p1.gens[i].linear.m.trace() > 3 + cfg.hyperbolic_margin);
    }
    // the elliptic generator only enters through hyperbolic words
    bool uses_elliptic = false;
    for (const Word& word : h.words)
      for (const Syllable& s : word.syllables) uses_elliptic |= (s.gen == 0);
    CHECK(uses_elliptic);
  }

  SUBCASE("mismatched markings are rejected") {
    const Presentation a = make_schottky_pair(std::log(2.0), std::log(2.0), kPi / 2);
    Presentation b = a;
    b.orders[0] = 7;
    CHECK_THROWS_AS(hyperbolize(a, b, cfg), MalformedInput);
  }
}
