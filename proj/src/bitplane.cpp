#include "bpwm/bitplane.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "bpwm/rng.hpp"

namespace bpwm {
namespace {

void check_plane_index(int plane_index) {
  if (plane_index < 1 || plane_index > 8) {
    throw std::invalid_argument("plane index " + std::to_string(plane_index) +
                                " out of range 1..8 (1 = MSB, 8 = LSB)");
  }
}

// Weight of plane l in the pixel value.
constexpr std::uint8_t plane_mask(int plane_index) {
  return static_cast<std::uint8_t>(1u << (8 - plane_index));
}

}  // namespace

BitPlane::BitPlane(int width, int height, std::vector<std::uint8_t> bits, int plane_index)
    : width_(width), height_(height), plane_index_(plane_index), bits_(std::move(bits)) {
  if (width_ <= 0 || height_ <= 0) {
    throw std::invalid_argument("BitPlane: dimensions must be positive");
  }
  if (bits_.size() != static_cast<std::size_t>(width_) * height_) {
    throw std::invalid_argument("BitPlane: bit count does not match dimensions");
  }
  check_plane_index(plane_index_);
  for (std::uint8_t b : bits_) {
    if (b > 1) {
      throw std::invalid_argument("BitPlane: bits must be 0 or 1");
    }
  }
}

PlaneStack::PlaneStack(std::vector<BitPlane> planes) : planes_(std::move(planes)) {
  if (planes_.size() != 8) {
    throw std::invalid_argument("PlaneStack: exactly 8 planes required");
  }
  for (int i = 0; i < 8; ++i) {
    if (planes_[i].plane_index() != i + 1) {
      throw std::invalid_argument("PlaneStack: planes must be ordered 1..8");
    }
    if (planes_[i].width() != planes_[0].width() ||
        planes_[i].height() != planes_[0].height()) {
      throw std::invalid_argument("PlaneStack: plane dimensions differ");
    }
  }
}

const BitPlane& PlaneStack::plane(int plane_index) const {
  check_plane_index(plane_index);
  return planes_[plane_index - 1];
}

PlaneStack decompose(const GrayImage& img) {
  std::vector<BitPlane> planes;
  planes.reserve(8);
  const auto pixels = img.pixels();
  for (int l = 1; l <= 8; ++l) {
    std::vector<std::uint8_t> bits(pixels.size());
    const int shift = 8 - l;
    for (std::size_t i = 0; i < pixels.size(); ++i) {
      bits[i] = (pixels[i] >> shift) & 1u;
    }
    planes.emplace_back(img.width(), img.height(), std::move(bits), l);
  }
  return PlaneStack(std::move(planes));
}

GrayImage recompose(const PlaneStack& stack) {
  const std::size_t n = static_cast<std::size_t>(stack.width()) * stack.height();
  std::vector<std::uint8_t> pixels(n, 0);
  for (int l = 1; l <= 8; ++l) {
    const auto bits = stack.plane(l).bits();
    const int shift = 8 - l;
    for (std::size_t i = 0; i < n; ++i) {
      pixels[i] = static_cast<std::uint8_t>(pixels[i] | (bits[i] << shift));
    }
  }
  return GrayImage(stack.width(), stack.height(), std::move(pixels));
}

BitPlane extract_plane(const GrayImage& img, int plane_index) {
  check_plane_index(plane_index);
  const auto pixels = img.pixels();
  std::vector<std::uint8_t> bits(pixels.size());
  const int shift = 8 - plane_index;
  for (std::size_t i = 0; i < pixels.size(); ++i) {
    bits[i] = (pixels[i] >> shift) & 1u;
  }
  return BitPlane(img.width(), img.height(), std::move(bits), plane_index);
}

GrayImage embed(const GrayImage& cover, const GrayImage& watermark,
                int image_plane, int watermark_plane) {
  if (cover.width() != watermark.width() || cover.height() != watermark.height()) {
    throw std::invalid_argument("embed: cover and watermark dimensions differ");
  }
  check_plane_index(image_plane);
  check_plane_index(watermark_plane);

  const std::uint8_t mask = plane_mask(image_plane);
  const int cover_shift = 8 - image_plane;
  const int wm_shift = 8 - watermark_plane;
  const auto cpix = cover.pixels();
  const auto wpix = watermark.pixels();
  std::vector<std::uint8_t> out(cpix.size());
  for (std::size_t i = 0; i < cpix.size(); ++i) {
    const std::uint8_t bit = (wpix[i] >> wm_shift) & 1u;
    out[i] = static_cast<std::uint8_t>((cpix[i] & ~mask) | (bit << cover_shift));
  }
  return GrayImage(cover.width(), cover.height(), std::move(out));
}

BitPlane pseudorandom_plane(std::uint64_t seed, int width, int height) {
  if (width <= 0 || height <= 0) {
    throw std::invalid_argument("pseudorandom_plane: dimensions must be positive");
  }
  SplitMix64 rng(seed);
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(width) * height);
  for (auto& b : bits) {
    b = static_cast<std::uint8_t>(rng.next() >> 63);
  }
  return BitPlane(width, height, std::move(bits), 8);
}

}  // namespace bpwm
