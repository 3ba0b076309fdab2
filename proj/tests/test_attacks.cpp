#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <variant>
#include <vector>

#include "bpwm/attacks.hpp"
#include "bpwm/bitplane.hpp"
#include "bpwm/detmath.hpp"
#include "bpwm/metrics.hpp"
#include "bpwm/rng.hpp"
#include "oracles.hpp"

using namespace bpwm;

namespace {

GrayImage random_image(std::uint64_t seed, int w, int h) {
  SplitMix64 rng(seed);
  return GrayImage(w, h, oracle::random_pixels(rng, std::size_t(w) * h));
}

// Deterministic textured image, closer to a photograph than white noise.
GrayImage textured_image(int n) {
  std::vector<std::uint8_t> px;
  px.reserve(std::size_t(n) * n);
  for (int y = 0; y < n; ++y) {
    for (int x = 0; x < n; ++x) {
      const double v = 128.0 + 80.0 * detmath::sin_deg(3.1 * x) *
                                   detmath::cos_deg(2.3 * y) +
                       20.0 * detmath::sin_deg(17.0 * (x + y));
      px.push_back(static_cast<std::uint8_t>(
          std::clamp(detmath::round_half_up(v), 0.0, 255.0)));
    }
  }
  return GrayImage(n, n, std::move(px));
}

}  // namespace

TEST_CASE("degree trigonometry hits frozen references") {
  using detmath::cos_deg;
  using detmath::sin_deg;
  CHECK(sin_deg(0.0) == 0.0);
  CHECK(cos_deg(0.0) == 1.0);
  CHECK(sin_deg(90.0) == 1.0);
  CHECK(cos_deg(90.0) == 0.0);
  CHECK(sin_deg(180.0) == 0.0);
  CHECK(cos_deg(180.0) == -1.0);
  CHECK(sin_deg(270.0) == -1.0);
  CHECK(cos_deg(270.0) == 0.0);
  CHECK(sin_deg(360.0) == 0.0);
  CHECK(cos_deg(360.0) == 1.0);

  CHECK(sin_deg(5.0) == doctest::Approx(0.08715574274765817).epsilon(5e-15));
  CHECK(cos_deg(5.0) == doctest::Approx(0.9961946980917455).epsilon(5e-15));
  CHECK(sin_deg(30.0) == doctest::Approx(0.5).epsilon(5e-15));
  CHECK(sin_deg(45.0) == doctest::Approx(0.7071067811865475).epsilon(5e-15));
  CHECK(cos_deg(60.0) == doctest::Approx(0.5).epsilon(5e-15));
  CHECK(sin_deg(123.456) == doctest::Approx(0.8343094333148064).epsilon(5e-15));
  CHECK(cos_deg(123.456) == doctest::Approx(-0.5512964442855826).epsilon(5e-15));

  // Folding makes periodicity exact, not approximate.
  CHECK(sin_deg(365.0) == sin_deg(5.0));
  CHECK(cos_deg(-355.0) == cos_deg(5.0));
  CHECK(sin_deg(-5.0) == -sin_deg(5.0));
}

TEST_CASE("round_half_up sends halves toward +infinity") {
  using detmath::round_half_up;
  CHECK(round_half_up(2.5) == 3.0);
  CHECK(round_half_up(-2.5) == -2.0);
  CHECK(round_half_up(2.49) == 2.0);
  CHECK(round_half_up(-0.5) == 0.0);
  CHECK(round_half_up(0.0) == 0.0);
}

TEST_CASE("every attack is bit-deterministic") {
  const GrayImage img = random_image(31, 33, 29);
  for (const AttackSpec& spec : default_battery(42)) {
    const GrayImage once = apply_attack(img, spec);
    const GrayImage twice = apply_attack(img, spec);
    CHECK(once == twice);
    CHECK(once.width() == img.width());
    CHECK(once.height() == img.height());
  }
}

TEST_CASE("rotation by a right angle is the exact permutation") {
  const GrayImage img(3, 3, {1, 2, 3, 4, 5, 6, 7, 8, 9});
  const GrayImage rot = apply_attack(img, AngleRotation{90.0});
  const std::vector<std::uint8_t> expected{3, 6, 9, 2, 5, 8, 1, 4, 7};
  CHECK(std::vector<std::uint8_t>(rot.pixels().begin(), rot.pixels().end()) ==
        expected);
}

TEST_CASE("rotation identities") {
  const GrayImage img = random_image(5, 16, 16);
  CHECK(apply_attack(img, AngleRotation{0.0}) == img);
  CHECK(apply_attack(img, AngleRotation{360.0}) == img);
  CHECK(apply_attack(img, RotateTransform{90.0}) == img);
  // 5 degrees loses corners, so the canvas is preserved but not the content.
  const GrayImage r5 = apply_attack(img, AngleRotation{5.0});
  CHECK(r5.width() == 16);
  CHECK(r5 != img);
}

TEST_CASE("crop zeroes the centered band and nothing else") {
  const GrayImage img(4, 10, std::vector<std::uint8_t>(40, 200));
  const GrayImage out = apply_attack(img, Crop{0.4});
  // band = round(0.4 * 10) = 4 rows starting at (10 - 4) / 2 = 3.
  for (int y = 0; y < 10; ++y) {
    for (int x = 0; x < 4; ++x) {
      CHECK(out.at(y, x) == (y >= 3 && y < 7 ? 0 : 200));
    }
  }
  CHECK(apply_attack(img, Crop{0.0}) == img);
  const GrayImage all = apply_attack(img, Crop{1.0});
  for (auto p : all.pixels()) CHECK(p == 0);
}

TEST_CASE("low-pass filter: identity at size 1, mean with rounding at 3") {
  const GrayImage img = random_image(6, 9, 7);
  CHECK(apply_attack(img, LowPassFilter{1}) == img);

  const GrayImage spike(3, 3, {0, 0, 0, 0, 9, 0, 0, 0, 0});
  const GrayImage blurred = apply_attack(spike, LowPassFilter{3});
  // Every clamped 3x3 window sums to 9, and round(9 / 9) = 1.
  for (auto p : blurred.pixels()) CHECK(p == 1);

  const GrayImage flat(5, 5, std::vector<std::uint8_t>(25, 77));
  CHECK(apply_attack(flat, LowPassFilter{5}) == flat);
}

TEST_CASE("quantization floors to the step grid and is idempotent") {
  const GrayImage img = random_image(7, 12, 12);
  const GrayImage q = apply_attack(img, Quantization{4});
  for (std::size_t i = 0; i < q.pixel_count(); ++i) {
    CHECK(q.pixels()[i] % 4 == 0);
    CHECK(q.pixels()[i] == img.pixels()[i] / 4 * 4);
  }
  CHECK(apply_attack(q, Quantization{4}) == q);
  CHECK(apply_attack(img, Quantization{1}) == img);

  // Step 4 wipes the two least significant planes.
  for (int l = 7; l <= 8; ++l) {
    const BitPlane plane = extract_plane(q, l);
    for (auto bit : plane.bits()) CHECK(bit == 0);
  }
}

TEST_CASE("translation shifts content and zero-fills the rest") {
  const GrayImage img(2, 2, {1, 2, 3, 4});
  const GrayImage down_right = apply_attack(img, Translation{1, 1});
  CHECK(std::vector<std::uint8_t>(down_right.pixels().begin(),
                                  down_right.pixels().end()) ==
        std::vector<std::uint8_t>{0, 0, 0, 1});
  const GrayImage left = apply_attack(img, Translation{-1, 0});
  CHECK(std::vector<std::uint8_t>(left.pixels().begin(), left.pixels().end()) ==
        std::vector<std::uint8_t>{2, 0, 4, 0});
  CHECK(apply_attack(img, Translation{0, 0}) == img);
  const GrayImage gone = apply_attack(img, Translation{5, 0});
  for (auto p : gone.pixels()) CHECK(p == 0);
}

TEST_CASE("contrast stretch maps min-max to 0-255 and is idempotent") {
  const GrayImage img(3, 1, {10, 130, 250});
  const GrayImage out = apply_attack(img, ContrastStretch{});
  CHECK(std::vector<std::uint8_t>(out.pixels().begin(), out.pixels().end()) ==
        std::vector<std::uint8_t>{0, 128, 255});
  CHECK(apply_attack(out, ContrastStretch{}) == out);

  const GrayImage flat(4, 4, std::vector<std::uint8_t>(16, 42));
  CHECK(apply_attack(flat, ContrastStretch{}) == flat);

  const GrayImage rnd = random_image(8, 20, 20);
  const GrayImage stretched = apply_attack(rnd, ContrastStretch{});
  CHECK(apply_attack(stretched, ContrastStretch{}) == stretched);
}

TEST_CASE("salt-pepper density 0 is the identity, density 1 saturates") {
  const GrayImage img = random_image(9, 18, 14);
  CHECK(apply_attack(img, SaltPepper{0.0, 1}) == img);
  const GrayImage noisy = apply_attack(img, SaltPepper{1.0, 1});
  for (auto p : noisy.pixels()) CHECK((p == 0 || p == 255));
  // Different seeds give different noise.
  CHECK(apply_attack(img, SaltPepper{0.5, 1}) != apply_attack(img, SaltPepper{0.5, 2}));
}

TEST_CASE("compression quality 100 is near-lossless, low quality is not") {
  const GrayImage img = textured_image(64);
  const GrayImage q100 = apply_attack(img, Compression{100});
  int max_diff = 0;
  for (std::size_t i = 0; i < img.pixel_count(); ++i) {
    max_diff = std::max(max_diff, std::abs(int(img.pixels()[i]) - int(q100.pixels()[i])));
  }
  CHECK(max_diff <= 4);
  CHECK(mse(img, apply_attack(img, Compression{10})) >
        mse(img, apply_attack(img, Compression{90})));
  // Non-multiple-of-8 canvases pad internally but keep their size.
  const GrayImage odd = random_image(10, 21, 13);
  const GrayImage codd = apply_attack(odd, Compression{75});
  CHECK(codd.width() == 21);
  CHECK(codd.height() == 13);
}

TEST_CASE("shrink averages blocks then rebuilds by nearest neighbor") {
  const GrayImage img(2, 2, {1, 2, 3, 4});
  const GrayImage out = apply_attack(img, Shrink{2});
  // mean 2.5 rounds half up to 3, replicated over the block.
  for (auto p : out.pixels()) CHECK(p == 3);
  CHECK(apply_attack(img, Shrink{1}) == img);

  // Partial edge blocks average only real pixels.
  const GrayImage tall(1, 3, {10, 20, 40});
  const GrayImage sh = apply_attack(tall, Shrink{2});
  CHECK(sh.at(0, 0) == 15);
  CHECK(sh.at(1, 0) == 15);
  CHECK(sh.at(2, 0) == 40);

  const GrayImage big = random_image(11, 32, 32);
  const GrayImage s2 = apply_attack(big, Shrink{2});
  for (int y = 0; y < 32; y += 2) {
    for (int x = 0; x < 32; x += 2) {
      CHECK(s2.at(y, x) == s2.at(y + 1, x));
      CHECK(s2.at(y, x) == s2.at(y, x + 1));
      CHECK(s2.at(y, x) == s2.at(y + 1, x + 1));
    }
  }
}

TEST_CASE("attack names follow the canonical battery order") {
  const auto battery = default_battery(7);
  const char* expected[10] = {"angle-rotation", "rotate-transform", "crop",
                              "low-pass-filter", "quantization", "translation",
                              "contrast-stretch", "salt-pepper", "compression",
                              "shrink"};
  for (std::size_t i = 0; i < battery.size(); ++i) {
    CHECK(attack_name(battery[i]) == expected[i]);
  }
  CHECK(std::get<SaltPepper>(battery[7]).seed == 7);
  CHECK(std::get<Crop>(battery[2]).fraction == 0.41);
}

TEST_CASE("validate_attack rejects out-of-range parameters") {
  const GrayImage img = random_image(1, 8, 8);
  CHECK_THROWS_AS(apply_attack(img, AngleRotation{std::nan("")}), std::invalid_argument);
  CHECK_THROWS_AS(apply_attack(img, Crop{-0.01}), std::invalid_argument);
  CHECK_THROWS_AS(apply_attack(img, Crop{1.01}), std::invalid_argument);
  CHECK_THROWS_AS(apply_attack(img, LowPassFilter{2}), std::invalid_argument);
  CHECK_THROWS_AS(apply_attack(img, LowPassFilter{-3}), std::invalid_argument);
  CHECK_THROWS_AS(apply_attack(img, LowPassFilter{101}), std::invalid_argument);
  CHECK_THROWS_AS(apply_attack(img, Quantization{0}), std::invalid_argument);
  CHECK_THROWS_AS(apply_attack(img, Quantization{256}), std::invalid_argument);
  CHECK_THROWS_AS(apply_attack(img, Translation{2'000'000, 0}), std::invalid_argument);
  CHECK_THROWS_AS(apply_attack(img, SaltPepper{-0.1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(apply_attack(img, SaltPepper{1.1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(apply_attack(img, Compression{0}), std::invalid_argument);
  CHECK_THROWS_AS(apply_attack(img, Compression{101}), std::invalid_argument);
  CHECK_THROWS_AS(apply_attack(img, Shrink{0}), std::invalid_argument);
  CHECK_THROWS_AS(apply_attack(img, Shrink{5000}), std::invalid_argument);
}
