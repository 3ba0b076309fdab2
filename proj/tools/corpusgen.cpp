// Generates the bundled test corpus: a synthetic photographic-style
// cover and a signature watermark with antialiased strokes over a
// textured background. Both are derived only from SplitMix64 and the
// polynomial trig kernels, so regeneration is bit-exact everywhere.
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bpwm/detmath.hpp"
#include "bpwm/raster.hpp"
#include "bpwm/rng.hpp"

namespace {

using bpwm::detmath::cos_deg;
using bpwm::detmath::round_half_up;
using bpwm::detmath::sin_deg;

std::uint8_t to_pixel(double v) {
  const long r = round_half_up(v);
  return static_cast<std::uint8_t>(std::clamp(r, 0L, 255L));
}

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

// Signed distance to a ring of radius r (negative inside the band).
double ring_dist(double x, double y, double cx, double cy, double r, double half_w) {
  const double dx = x - cx;
  const double dy = y - cy;
  return std::abs(std::sqrt(dx * dx + dy * dy) - r) - half_w;
}

// Signed distance to a capsule (thick segment), negative inside.
double bar_dist(double x, double y, double x0, double y0, double x1, double y1,
                double half_w) {
  const double vx = x1 - x0;
  const double vy = y1 - y0;
  const double px = x - x0;
  const double py = y - y0;
  const double t = clamp01((px * vx + py * vy) / (vx * vx + vy * vy));
  const double dx = px - t * vx;
  const double dy = py - t * vy;
  return std::sqrt(dx * dx + dy * dy) - half_w;
}

bpwm::GrayImage make_cover(int size, std::uint64_t seed) {
  bpwm::SplitMix64 rng(seed);
  std::vector<std::uint8_t> pixels;
  pixels.reserve(static_cast<std::size_t>(size) * size);
  for (int y = 0; y < size; ++y) {
    for (int x = 0; x < size; ++x) {
      double v = 118.0;
      v += 52.0 * sin_deg(0.42 * x + 14.0) * cos_deg(0.31 * y - 8.0);
      v += 30.0 * cos_deg(0.23 * (x + y));

      // Bright disk upper left, dark slab upper right, both soft-edged.
      const double dd =
          std::sqrt((x - 88.0) * (x - 88.0) + (y - 96.0) * (y - 96.0)) - 46.0;
      v += 42.0 * (1.0 - clamp01((dd + 3.0) / 6.0));
      const double rx = std::max(std::abs(x - 186.0) - 34.0, std::abs(y - 74.0) - 32.0);
      v -= 48.0 * (1.0 - clamp01((rx + 3.0) / 6.0));

      v += 7.0 * sin_deg(6.7 * x) * sin_deg(8.9 * y);
      v += 8.0 * (rng.next_unit() - 0.5);
      pixels.push_back(to_pixel(v));
    }
  }
  return bpwm::GrayImage(size, size, std::move(pixels));
}

bpwm::GrayImage make_signature(int size, std::uint64_t seed) {
  bpwm::SplitMix64 rng(seed);
  const double s = size / 256.0;
  std::vector<std::uint8_t> pixels;
  pixels.reserve(static_cast<std::size_t>(size) * size);
  for (int y = 0; y < size; ++y) {
    for (int x = 0; x < size; ++x) {
      const double bg =
          208.0 + 16.0 * sin_deg(0.66 * x + 0.48 * y) + 9.0 * cos_deg(1.1 * y - 30.0);
      const double ink = 42.0 + 14.0 * sin_deg(0.9 * (x + 2.0 * y));

      // Seal-style monogram: a ring, a diagonal stroke, two bars.
      double d = ring_dist(x, y, 128.0 * s, 128.0 * s, 72.0 * s, 9.0 * s);
      d = std::min(d, bar_dist(x, y, 74.0 * s, 182.0 * s, 182.0 * s, 74.0 * s, 10.0 * s));
      d = std::min(d, bar_dist(x, y, 70.0 * s, 96.0 * s, 186.0 * s, 96.0 * s, 7.0 * s));
      d = std::min(d, bar_dist(x, y, 96.0 * s, 160.0 * s, 160.0 * s, 160.0 * s, 7.0 * s));

      // 3 px antialiasing ramp between ink and background.
      const double t = clamp01((d + 1.5) / 3.0);
      double v = ink + (bg - ink) * t;
      v += 6.0 * (rng.next_unit() - 0.5);
      pixels.push_back(to_pixel(v));
    }
  }
  return bpwm::GrayImage(size, size, std::move(pixels));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"generate the bundled cover and signature PGM corpus"};
  std::string out_dir = "data";
  int size = 256;
  std::uint64_t seed = 42;
  app.add_option("--out-dir", out_dir, "output directory (default data)");
  app.add_option("--size", size, "square image side (default 256)")
      ->check(CLI::Range(8, 4096));
  app.add_option("--seed", seed, "noise seed (default 42)");
  CLI11_PARSE(app, argc, argv);

  try {
    std::filesystem::create_directories(out_dir);
    const std::filesystem::path dir(out_dir);
    bpwm::write_pgm_file(dir / "cover.pgm", make_cover(size, seed));
    bpwm::write_pgm_file(dir / "signature.pgm", make_signature(size, seed + 1));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  std::cout << "wrote " << out_dir << "/cover.pgm and " << out_dir
            << "/signature.pgm\n";
  return 0;
}
