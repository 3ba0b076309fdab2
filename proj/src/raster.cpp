#include "bpwm/raster.hpp"

#include <cstdio>
#include <fstream>
#include <limits>

namespace bpwm {
namespace {

constexpr long long kMaxPixels = 100'000'000;

bool is_pgm_space(std::uint8_t c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
}

// Reads the next decimal header token, skipping whitespace and '#'
// comment lines.
long long next_header_value(std::span<const std::uint8_t> bytes, std::size_t& pos,
                            const char* what) {
  for (;;) {
    while (pos < bytes.size() && is_pgm_space(bytes[pos])) ++pos;
    if (pos < bytes.size() && bytes[pos] == '#') {
      while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
      continue;
    }
    break;
  }
  if (pos >= bytes.size() || bytes[pos] < '0' || bytes[pos] > '9') {
    throw PgmDecodeError(std::string("malformed PGM header: expected ") + what);
  }
  long long value = 0;
  while (pos < bytes.size() && bytes[pos] >= '0' && bytes[pos] <= '9') {
    value = value * 10 + (bytes[pos] - '0');
    if (value > std::numeric_limits<int>::max()) {
      throw PgmDecodeError(std::string("malformed PGM header: ") + what + " out of range");
    }
    ++pos;
  }
  return value;
}

}  // namespace

GrayImage::GrayImage(int width, int height)
    : GrayImage(width, height,
                std::vector<std::uint8_t>(
                    width > 0 && height > 0
                        ? static_cast<std::size_t>(width) * height
                        : 0)) {}

GrayImage::GrayImage(int width, int height, std::vector<std::uint8_t> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
  if (width_ <= 0 || height_ <= 0) {
    throw std::invalid_argument("GrayImage: dimensions must be positive");
  }
  if (pixels_.size() != static_cast<std::size_t>(width_) * height_) {
    throw std::invalid_argument("GrayImage: pixel count does not match dimensions");
  }
}

GrayImage load_pgm(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '5') {
    throw PgmDecodeError("not a binary PGM: missing P5 magic");
  }
  std::size_t pos = 2;
  if (pos >= bytes.size() || !(is_pgm_space(bytes[pos]) || bytes[pos] == '#')) {
    throw PgmDecodeError("malformed PGM header: no separator after magic");
  }

  const long long width = next_header_value(bytes, pos, "width");
  const long long height = next_header_value(bytes, pos, "height");
  const long long maxval = next_header_value(bytes, pos, "maxval");
  if (width < 1 || height < 1 || width * height > kMaxPixels) {
    throw PgmDecodeError("malformed PGM header: dimensions out of range");
  }
  if (maxval != 255) {
    throw PgmDecodeError("unsupported maxval " + std::to_string(maxval) +
                         " (only 255)");
  }
  // Exactly one whitespace byte separates the header from the payload.
  if (pos >= bytes.size() || !is_pgm_space(bytes[pos])) {
    throw PgmDecodeError("malformed PGM header: missing whitespace before pixel data");
  }
  ++pos;

  const std::size_t expected = static_cast<std::size_t>(width) * height;
  if (bytes.size() - pos < expected) {
    throw PgmDecodeError("truncated PGM payload: expected " +
                         std::to_string(expected) + " bytes, found " +
                         std::to_string(bytes.size() - pos));
  }
  std::vector<std::uint8_t> pixels(bytes.begin() + pos, bytes.begin() + pos + expected);
  return GrayImage(static_cast<int>(width), static_cast<int>(height), std::move(pixels));
}

std::vector<std::uint8_t> save_pgm(const GrayImage& img) {
  char header[64];
  const int n = std::snprintf(header, sizeof header, "P5\n%d %d\n255\n",
                              img.width(), img.height());
  std::vector<std::uint8_t> out;
  out.reserve(static_cast<std::size_t>(n) + img.pixel_count());
  out.insert(out.end(), header, header + n);
  out.insert(out.end(), img.pixels().begin(), img.pixels().end());
  return out;
}

GrayImage read_pgm_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw FileIoError("cannot open " + path.string() + " for reading");
  }
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (in.bad()) {
    throw FileIoError("failed reading " + path.string());
  }
  return load_pgm(bytes);
}

void write_pgm_file(const std::filesystem::path& path, const GrayImage& img) {
  const std::vector<std::uint8_t> bytes = save_pgm(img);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw FileIoError("cannot open " + path.string() + " for writing");
  }
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) {
    throw FileIoError("failed writing " + path.string());
  }
}

}  // namespace bpwm
