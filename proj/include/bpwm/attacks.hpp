#pragma once

#include <array>
#include <cstdint>
#include <string_view>
#include <variant>

#include "bpwm/raster.hpp"

namespace bpwm {

// The ten-attack battery, canonical order 1..10. Every attack preserves
// the canvas size so blind positional extraction stays defined, and is
// bit-deterministic given its parameters.

// 1. Rotate about the image center, nearest-neighbor, zero fill.
//    Positive degrees turn the content counterclockwise on screen.
struct AngleRotation {
  double degrees = 5.0;
};

// 2. Rotate by +degrees then back by -degrees (resampling loss only).
struct RotateTransform {
  double degrees = 5.0;
};

// 3. Zero a centered horizontal band covering ~fraction of the pixels.
struct Crop {
  double fraction = 0.41;
};

// 4. size x size box mean, round half up, clamped borders. size odd.
struct LowPassFilter {
  int size = 3;
};

// 5. pixel -> step * floor(pixel / step).
struct Quantization {
  int step = 4;
};

// 6. Shift content by (dx, dy) pixels (dx right, dy down), zero fill.
struct Translation {
  int dx = 5;
  int dy = 5;
};

// 7. Linear min-max stretch to [0, 255], round half up; identity when
//    the image is constant. Idempotent.
struct ContrastStretch {};

// 8. Each pixel is replaced with probability density by 0 or 255
//    (equiprobable), driven by SplitMix64(seed) in row-major order.
struct SaltPepper {
  double density = 0.02;
  std::uint64_t seed = 42;
};

// 9. 8x8 block DCT quantized by the baseline JPEG luminance table scaled
//    with the libjpeg quality rule, then dequantized and inverted.
//    Self-contained; no codec bitstream is produced.
struct Compression {
  int quality = 75;
};

// 10. factor x factor block average downscale, nearest-neighbor upscale.
struct Shrink {
  int factor = 2;
};

using AttackSpec = std::variant<AngleRotation, RotateTransform, Crop,
                                LowPassFilter, Quantization, Translation,
                                ContrastStretch, SaltPepper, Compression,
                                Shrink>;

inline constexpr std::size_t kAttackCount = 10;

// Kebab-case kind name ("angle-rotation", ..., "shrink").
std::string_view attack_name(const AttackSpec& spec);

// Throws std::invalid_argument when a parameter is out of range.
void validate_attack(const AttackSpec& spec);

GrayImage apply_attack(const GrayImage& img, const AttackSpec& spec);

// The default battery in canonical order; seed feeds salt-pepper.
std::array<AttackSpec, kAttackCount> default_battery(std::uint64_t seed = 42);

}  // namespace bpwm
