#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "bpwm/raster.hpp"

namespace bpwm {

// One bit position of every pixel. plane_index 1 is the most significant
// bit (weight 128) and 8 the least significant (weight 1), so plane l
// carries weight 2^(8-l). The index records which position a plane came
// from; equality compares dimensions and bits only.
class BitPlane {
 public:
  BitPlane(int width, int height, std::vector<std::uint8_t> bits, int plane_index);

  int width() const { return width_; }
  int height() const { return height_; }
  int plane_index() const { return plane_index_; }

  std::uint8_t at(int row, int col) const {
    return bits_[static_cast<std::size_t>(row) * width_ + col];
  }
  std::span<const std::uint8_t> bits() const { return bits_; }

  friend bool operator==(const BitPlane& a, const BitPlane& b) {
    return a.width_ == b.width_ && a.height_ == b.height_ && a.bits_ == b.bits_;
  }

 private:
  int width_;
  int height_;
  int plane_index_;
  std::vector<std::uint8_t> bits_;
};

// All eight planes of one image, indices 1..8 in order. Together they
// encode the image bijectively: recompose(decompose(img)) == img.
class PlaneStack {
 public:
  explicit PlaneStack(std::vector<BitPlane> planes);

  const BitPlane& plane(int plane_index) const;  // 1-based
  int width() const { return planes_.front().width(); }
  int height() const { return planes_.front().height(); }

 private:
  std::vector<BitPlane> planes_;
};

PlaneStack decompose(const GrayImage& img);
GrayImage recompose(const PlaneStack& stack);

// Plane l of the image; applied to an attacked image this is the blind
// watermark-retrieval step (no cover needed, only the plane index).
BitPlane extract_plane(const GrayImage& img, int plane_index);

// Replace plane image_plane of the cover with plane watermark_plane of
// the watermark; all other cover planes are untouched, so each pixel
// moves by at most 2^(8-image_plane).
GrayImage embed(const GrayImage& cover, const GrayImage& watermark,
                int image_plane, int watermark_plane);

// Deterministic Bernoulli(0.5) plane from SplitMix64; the noise-pattern
// baseline watermark. plane_index of the result is 8.
BitPlane pseudorandom_plane(std::uint64_t seed, int width, int height);

}  // namespace bpwm
