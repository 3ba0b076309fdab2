#include "bpwm/attacks.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "bpwm/detmath.hpp"
#include "bpwm/rng.hpp"

namespace bpwm {
namespace {

using detmath::round_half_up;

std::size_t pixel_index(int width, int row, int col) {
  return static_cast<std::size_t>(row) * width + col;
}

// Nearest-neighbor rotation about the image center, zero fill. Positive
// degrees turn the content counterclockwise on screen (rows grow
// downward), implemented by inverse mapping each destination pixel.
GrayImage rotate_nn(const GrayImage& img, double degrees) {
  const int w = img.width();
  const int h = img.height();
  const double c = detmath::cos_deg(degrees);
  const double s = detmath::sin_deg(degrees);
  const double cx = 0.5 * (w - 1);
  const double cy = 0.5 * (h - 1);
  std::vector<std::uint8_t> out(static_cast<std::size_t>(w) * h, 0);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double rx = x - cx;
      const double ry = y - cy;
      const double sx = round_half_up(c * rx - s * ry + cx);
      const double sy = round_half_up(s * rx + c * ry + cy);
      if (sx >= 0.0 && sx < w && sy >= 0.0 && sy < h) {
        out[pixel_index(w, y, x)] =
            img.at(static_cast<int>(sy), static_cast<int>(sx));
      }
    }
  }
  return GrayImage(w, h, std::move(out));
}

GrayImage apply(const GrayImage& img, const AngleRotation& a) {
  return rotate_nn(img, a.degrees);
}

GrayImage apply(const GrayImage& img, const RotateTransform& a) {
  return rotate_nn(rotate_nn(img, a.degrees), -a.degrees);
}

GrayImage apply(const GrayImage& img, const Crop& a) {
  const int h = img.height();
  const int band = std::clamp(static_cast<int>(std::llround(a.fraction * h)), 0, h);
  const int start = (h - band) / 2;
  std::vector<std::uint8_t> out(img.pixels().begin(), img.pixels().end());
  std::fill(out.begin() + pixel_index(img.width(), start, 0),
            out.begin() + pixel_index(img.width(), start + band, 0), 0);
  return GrayImage(img.width(), h, std::move(out));
}

GrayImage apply(const GrayImage& img, const LowPassFilter& a) {
  const int w = img.width();
  const int h = img.height();
  const int r = a.size / 2;
  const long long n = static_cast<long long>(a.size) * a.size;
  std::vector<std::uint8_t> out(static_cast<std::size_t>(w) * h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      long long sum = 0;
      for (int wy = y - r; wy <= y + r; ++wy) {
        const int sy = std::clamp(wy, 0, h - 1);
        for (int wx = x - r; wx <= x + r; ++wx) {
          sum += img.at(sy, std::clamp(wx, 0, w - 1));
        }
      }
      // integer round half up of sum / n
      out[pixel_index(w, y, x)] = static_cast<std::uint8_t>((2 * sum + n) / (2 * n));
    }
  }
  return GrayImage(w, h, std::move(out));
}

GrayImage apply(const GrayImage& img, const Quantization& a) {
  std::vector<std::uint8_t> out(img.pixel_count());
  const auto pixels = img.pixels();
  for (std::size_t i = 0; i < pixels.size(); ++i) {
    out[i] = static_cast<std::uint8_t>(pixels[i] / a.step * a.step);
  }
  return GrayImage(img.width(), img.height(), std::move(out));
}

GrayImage apply(const GrayImage& img, const Translation& a) {
  const int w = img.width();
  const int h = img.height();
  std::vector<std::uint8_t> out(static_cast<std::size_t>(w) * h, 0);
  for (int y = 0; y < h; ++y) {
    const int sy = y - a.dy;
    if (sy < 0 || sy >= h) continue;
    for (int x = 0; x < w; ++x) {
      const int sx = x - a.dx;
      if (sx < 0 || sx >= w) continue;
      out[pixel_index(w, y, x)] = img.at(sy, sx);
    }
  }
  return GrayImage(w, h, std::move(out));
}

GrayImage apply(const GrayImage& img, const ContrastStretch&) {
  const auto pixels = img.pixels();
  const auto [mn_it, mx_it] = std::minmax_element(pixels.begin(), pixels.end());
  const int mn = *mn_it;
  const int mx = *mx_it;
  if (mn == mx) {
    return img;
  }
  const long long range = mx - mn;
  std::vector<std::uint8_t> out(pixels.size());
  for (std::size_t i = 0; i < pixels.size(); ++i) {
    const long long d = pixels[i] - mn;
    out[i] = static_cast<std::uint8_t>((2 * d * 255 + range) / (2 * range));
  }
  return GrayImage(img.width(), img.height(), std::move(out));
}

GrayImage apply(const GrayImage& img, const SaltPepper& a) {
  SplitMix64 rng(a.seed);
  std::vector<std::uint8_t> out(img.pixels().begin(), img.pixels().end());
  for (auto& p : out) {
    if (rng.next_unit() < a.density) {
      p = rng.next_bit() ? 255 : 0;
    }
  }
  return GrayImage(img.width(), img.height(), std::move(out));
}

// Baseline JPEG luminance quantization table (ITU-T T.81 Annex K),
// natural row-major order.
constexpr int kBaseLuminance[64] = {
    16, 11, 10, 16, 24, 40, 51, 61,
    12, 12, 14, 19, 26, 58, 60, 55,
    14, 13, 16, 24, 40, 57, 69, 56,
    14, 17, 22, 29, 51, 87, 80, 62,
    18, 22, 37, 56, 68, 109, 103, 77,
    24, 35, 55, 64, 81, 104, 113, 92,
    49, 64, 78, 87, 103, 121, 120, 101,
    72, 92, 95, 98, 112, 100, 103, 99};

struct DctBasis {
  double c[8][8];
  DctBasis() {
    for (int u = 0; u < 8; ++u) {
      const double amp = u == 0 ? std::sqrt(0.125) : 0.5;
      for (int x = 0; x < 8; ++x) {
        // cos((2x+1) * u * pi / 16), expressed in degrees
        c[u][x] = amp * detmath::cos_deg((2 * x + 1) * u * 11.25);
      }
    }
  }
};

GrayImage apply(const GrayImage& img, const Compression& a) {
  static const DctBasis basis;

  // libjpeg quality scaling of the base table
  const int scale = a.quality < 50 ? 5000 / a.quality : 200 - 2 * a.quality;
  int qt[64];
  for (int i = 0; i < 64; ++i) {
    qt[i] = std::clamp((kBaseLuminance[i] * scale + 50) / 100, 1, 255);
  }

  const int w = img.width();
  const int h = img.height();
  const int pw = (w + 7) / 8 * 8;
  const int ph = (h + 7) / 8 * 8;

  // pad by edge replication
  std::vector<std::uint8_t> padded(static_cast<std::size_t>(pw) * ph);
  for (int y = 0; y < ph; ++y) {
    const int sy = std::min(y, h - 1);
    for (int x = 0; x < pw; ++x) {
      padded[pixel_index(pw, y, x)] = img.at(sy, std::min(x, w - 1));
    }
  }

  std::vector<std::uint8_t> out(static_cast<std::size_t>(w) * h);
  double block[8][8], tmp[8][8], coef[8][8];
  for (int by = 0; by < ph; by += 8) {
    for (int bx = 0; bx < pw; bx += 8) {
      for (int y = 0; y < 8; ++y) {
        for (int x = 0; x < 8; ++x) {
          block[y][x] = padded[pixel_index(pw, by + y, bx + x)] - 128.0;
        }
      }
      // forward: coef = C * block * C^T
      for (int u = 0; u < 8; ++u) {
        for (int x = 0; x < 8; ++x) {
          double acc = 0.0;
          for (int y = 0; y < 8; ++y) acc += basis.c[u][y] * block[y][x];
          tmp[u][x] = acc;
        }
      }
      for (int u = 0; u < 8; ++u) {
        for (int v = 0; v < 8; ++v) {
          double acc = 0.0;
          for (int x = 0; x < 8; ++x) acc += tmp[u][x] * basis.c[v][x];
          // quantize / dequantize in one step, round half up
          const int q = qt[u * 8 + v];
          coef[u][v] = std::floor(acc / q + 0.5) * q;
        }
      }
      // inverse: block = C^T * coef * C
      for (int y = 0; y < 8; ++y) {
        for (int v = 0; v < 8; ++v) {
          double acc = 0.0;
          for (int u = 0; u < 8; ++u) acc += basis.c[u][y] * coef[u][v];
          tmp[y][v] = acc;
        }
      }
      for (int y = 0; y < 8; ++y) {
        const int iy = by + y;
        if (iy >= h) break;
        for (int x = 0; x < 8; ++x) {
          const int ix = bx + x;
          if (ix >= w) continue;
          double acc = 0.0;
          for (int v = 0; v < 8; ++v) acc += tmp[y][v] * basis.c[v][x];
          const double value = round_half_up(acc + 128.0);
          out[pixel_index(w, iy, ix)] =
              static_cast<std::uint8_t>(std::clamp(value, 0.0, 255.0));
        }
      }
    }
  }
  return GrayImage(w, h, std::move(out));
}

GrayImage apply(const GrayImage& img, const Shrink& a) {
  const int w = img.width();
  const int h = img.height();
  const int f = a.factor;
  const int bw = (w + f - 1) / f;
  const int bh = (h + f - 1) / f;
  std::vector<std::uint8_t> blocks(static_cast<std::size_t>(bw) * bh);
  for (int by = 0; by < bh; ++by) {
    const int y0 = by * f;
    const int y1 = std::min(y0 + f, h);
    for (int bx = 0; bx < bw; ++bx) {
      const int x0 = bx * f;
      const int x1 = std::min(x0 + f, w);
      long long sum = 0;
      for (int y = y0; y < y1; ++y) {
        for (int x = x0; x < x1; ++x) sum += img.at(y, x);
      }
      const long long count = static_cast<long long>(y1 - y0) * (x1 - x0);
      blocks[pixel_index(bw, by, bx)] =
          static_cast<std::uint8_t>((2 * sum + count) / (2 * count));
    }
  }
  std::vector<std::uint8_t> out(static_cast<std::size_t>(w) * h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      out[pixel_index(w, y, x)] = blocks[pixel_index(bw, y / f, x / f)];
    }
  }
  return GrayImage(w, h, std::move(out));
}

void check(bool ok, const char* kind, const std::string& what) {
  if (!ok) {
    throw std::invalid_argument(std::string(kind) + ": " + what);
  }
}

}  // namespace

std::string_view attack_name(const AttackSpec& spec) {
  return std::visit(
      [](const auto& a) -> std::string_view {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, AngleRotation>) return "angle-rotation";
        else if constexpr (std::is_same_v<T, RotateTransform>) return "rotate-transform";
        else if constexpr (std::is_same_v<T, Crop>) return "crop";
        else if constexpr (std::is_same_v<T, LowPassFilter>) return "low-pass-filter";
        else if constexpr (std::is_same_v<T, Quantization>) return "quantization";
        else if constexpr (std::is_same_v<T, Translation>) return "translation";
        else if constexpr (std::is_same_v<T, ContrastStretch>) return "contrast-stretch";
        else if constexpr (std::is_same_v<T, SaltPepper>) return "salt-pepper";
        else if constexpr (std::is_same_v<T, Compression>) return "compression";
        else return "shrink";
      },
      spec);
}

void validate_attack(const AttackSpec& spec) {
  std::visit(
      [](const auto& a) {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, AngleRotation> ||
                      std::is_same_v<T, RotateTransform>) {
          check(std::isfinite(a.degrees), "rotation", "degrees must be finite");
        } else if constexpr (std::is_same_v<T, Crop>) {
          check(a.fraction >= 0.0 && a.fraction <= 1.0, "crop",
                "fraction must be in [0, 1]");
        } else if constexpr (std::is_same_v<T, LowPassFilter>) {
          check(a.size >= 1 && a.size <= 99 && a.size % 2 == 1, "low-pass-filter",
                "size must be odd and in [1, 99]");
        } else if constexpr (std::is_same_v<T, Quantization>) {
          check(a.step >= 1 && a.step <= 255, "quantization",
                "step must be in [1, 255]");
        } else if constexpr (std::is_same_v<T, Translation>) {
          check(std::abs(a.dx) <= 1'000'000 && std::abs(a.dy) <= 1'000'000,
                "translation", "|dx| and |dy| must be at most 1000000");
        } else if constexpr (std::is_same_v<T, SaltPepper>) {
          check(a.density >= 0.0 && a.density <= 1.0, "salt-pepper",
                "density must be in [0, 1]");
        } else if constexpr (std::is_same_v<T, Compression>) {
          check(a.quality >= 1 && a.quality <= 100, "compression",
                "quality must be in [1, 100]");
        } else if constexpr (std::is_same_v<T, Shrink>) {
          check(a.factor >= 1 && a.factor <= 4096, "shrink",
                "factor must be in [1, 4096]");
        }
      },
      spec);
}

GrayImage apply_attack(const GrayImage& img, const AttackSpec& spec) {
  validate_attack(spec);
  return std::visit([&img](const auto& a) { return apply(img, a); }, spec);
}

std::array<AttackSpec, kAttackCount> default_battery(std::uint64_t seed) {
  return {AngleRotation{}, RotateTransform{}, Crop{},  LowPassFilter{},
          Quantization{},  Translation{},     ContrastStretch{},
          SaltPepper{.density = 0.02, .seed = seed},
          Compression{},   Shrink{}};
}

}  // namespace bpwm
