#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace bpwm {

// 8-bit grayscale raster, row-major, origin at the top-left corner.
// Values are immutable after construction, so images can be shared
// freely between concurrent workers.
class GrayImage {
 public:
  GrayImage(int width, int height);  // zero-filled
  GrayImage(int width, int height, std::vector<std::uint8_t> pixels);

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t pixel_count() const { return pixels_.size(); }

  std::uint8_t at(int row, int col) const {
    return pixels_[static_cast<std::size_t>(row) * width_ + col];
  }
  std::span<const std::uint8_t> pixels() const { return pixels_; }

  friend bool operator==(const GrayImage&, const GrayImage&) = default;

 private:
  int width_;
  int height_;
  std::vector<std::uint8_t> pixels_;
};

// Raised when a PGM byte stream cannot be decoded; the message states
// which part of the format was violated.
class PgmDecodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when a file cannot be opened, read, or written.
class FileIoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Binary PGM (P5) codec, maxval 255. save_pgm always emits the fixed
// header "P5\n<w> <h>\n255\n" so outputs are byte-stable; load_pgm
// accepts any standard header (whitespace and '#' comments).
GrayImage load_pgm(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> save_pgm(const GrayImage& img);

GrayImage read_pgm_file(const std::filesystem::path& path);
void write_pgm_file(const std::filesystem::path& path, const GrayImage& img);

}  // namespace bpwm
