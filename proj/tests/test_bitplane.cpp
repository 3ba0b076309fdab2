#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <numeric>
#include <vector>

#include "bpwm/bitplane.hpp"
#include "bpwm/rng.hpp"
#include "oracles.hpp"

using bpwm::BitPlane;
using bpwm::GrayImage;
using bpwm::PlaneStack;

TEST_CASE("SplitMix64 matches the published reference stream") {
  bpwm::SplitMix64 rng(0);
  CHECK(rng.next() == 0xe220a8397b1dcdafULL);
  CHECK(rng.next() == 0x6e789e6aa1b965f4ULL);
  CHECK(rng.next() == 0x06c45d188009454fULL);
}

TEST_CASE("SplitMix64 unit doubles stay in [0, 1)") {
  bpwm::SplitMix64 rng(7);
  CHECK(rng.next_unit() == doctest::Approx(0.3898297483912715).epsilon(1e-15));
  CHECK(rng.next_unit() == doctest::Approx(0.01678829452815611).epsilon(1e-15));
  for (int i = 0; i < 1000; ++i) {
    const double u = rng.next_unit();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("decompose slices the documented bit positions") {
  // 178 = 10110010: plane 1 (MSB) .. plane 8 (LSB).
  const GrayImage img(1, 1, {178});
  const PlaneStack stack = bpwm::decompose(img);
  const int expected[8] = {1, 0, 1, 1, 0, 0, 1, 0};
  for (int l = 1; l <= 8; ++l) {
    CHECK(stack.plane(l).at(0, 0) == expected[l - 1]);
    CHECK(stack.plane(l).plane_index() == l);
  }
  CHECK_THROWS_AS(stack.plane(0), std::invalid_argument);
  CHECK_THROWS_AS(stack.plane(9), std::invalid_argument);
}

TEST_CASE("recompose inverts decompose") {
  bpwm::SplitMix64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const int w = 1 + int(rng.next() % 24);
    const int h = 1 + int(rng.next() % 24);
    const GrayImage img(w, h, oracle::random_pixels(rng, std::size_t(w) * h));
    CHECK(bpwm::recompose(bpwm::decompose(img)) == img);
  }
}

TEST_CASE("extract_plane equals the decomposed plane") {
  bpwm::SplitMix64 rng(12);
  const GrayImage img(16, 16, oracle::random_pixels(rng, 256));
  const PlaneStack stack = bpwm::decompose(img);
  for (int l = 1; l <= 8; ++l) {
    CHECK(bpwm::extract_plane(img, l) == stack.plane(l));
  }
  CHECK_THROWS_AS(bpwm::extract_plane(img, 0), std::invalid_argument);
  CHECK_THROWS_AS(bpwm::extract_plane(img, 9), std::invalid_argument);
}

TEST_CASE("embed replaces exactly the target plane") {
  bpwm::SplitMix64 rng(13);
  const GrayImage cover(16, 16, oracle::random_pixels(rng, 256));
  const GrayImage wm(16, 16, oracle::random_pixels(rng, 256));
  for (int l = 1; l <= 8; ++l) {
    for (int k = 1; k <= 8; ++k) {
      const GrayImage marked = bpwm::embed(cover, wm, l, k);
      CHECK(bpwm::extract_plane(marked, l) == bpwm::extract_plane(wm, k));
      const int weight = 1 << (8 - l);
      for (int p = 1; p <= 8; ++p) {
        if (p != l) CHECK(bpwm::extract_plane(marked, p) == bpwm::extract_plane(cover, p));
      }
      for (std::size_t i = 0; i < cover.pixel_count(); ++i) {
        const int diff = int(cover.pixels()[i]) - int(marked.pixels()[i]);
        CHECK(std::abs(diff) <= weight);
      }
    }
  }
}

TEST_CASE("embed validates dimensions and plane indices") {
  const GrayImage a(4, 4, std::vector<std::uint8_t>(16, 1));
  const GrayImage b(4, 5, std::vector<std::uint8_t>(20, 1));
  CHECK_THROWS_AS(bpwm::embed(a, b, 8, 1), std::invalid_argument);
  CHECK_THROWS_AS(bpwm::embed(a, a, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(bpwm::embed(a, a, 1, 9), std::invalid_argument);
}

TEST_CASE("BitPlane rejects non-binary samples") {
  CHECK_THROWS_AS(BitPlane(2, 1, {0, 2}, 8), std::invalid_argument);
  CHECK_THROWS_AS(BitPlane(2, 1, {0, 1, 1}, 8), std::invalid_argument);
  CHECK_THROWS_AS(BitPlane(2, 1, {0, 1}, 0), std::invalid_argument);
}

TEST_CASE("pseudorandom_plane is frozen by seed") {
  const BitPlane p42 = bpwm::pseudorandom_plane(42, 256, 256);
  CHECK(p42.plane_index() == 8);
  const long ones = std::accumulate(p42.bits().begin(), p42.bits().end(), 0L);
  CHECK(ones == 32761);

  const int first16[16] = {1, 0, 0, 0, 0, 1, 0, 1, 0, 1, 0, 0, 1, 1, 1, 0};
  for (int i = 0; i < 16; ++i) CHECK(p42.bits()[i] == first16[i]);

  CHECK(bpwm::pseudorandom_plane(42, 256, 256) == p42);

  const BitPlane p1 = bpwm::pseudorandom_plane(1, 256, 256);
  const BitPlane p2 = bpwm::pseudorandom_plane(2, 256, 256);
  long differing = 0;
  for (std::size_t i = 0; i < p1.bits().size(); ++i) {
    differing += p1.bits()[i] != p2.bits()[i];
  }
  CHECK(differing == 32743);
}
