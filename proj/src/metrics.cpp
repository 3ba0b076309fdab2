#include "bpwm/metrics.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace bpwm {
namespace {

// Compensated (Kahan) sum; the bundled presets sum to exactly 1.0 under
// it, which a naive left fold does not achieve for equal weights 0.1.
double kahan_sum(std::span<const double> values) {
  double sum = 0.0;
  double comp = 0.0;
  for (double v : values) {
    const double y = v - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum;
}

// Preset weights in thousandths (exact integers; column headers of the
// four bundled user-requirement profiles).
constexpr int kPresetPermille[4][10] = {
    {100, 100, 100, 100, 100, 100, 100, 100, 100, 100},
    {50, 50, 50, 50, 50, 50, 200, 200, 200, 100},
    {25, 50, 25, 25, 25, 50, 100, 400, 100, 200},
    {25, 25, 50, 50, 50, 50, 50, 200, 300, 200},
};

void check_same_size_planes(const BitPlane& a, const BitPlane& b, const char* op) {
  if (a.width() != b.width() || a.height() != b.height()) {
    throw std::invalid_argument(std::string(op) + ": plane dimensions differ");
  }
}

void check_same_size_images(const GrayImage& a, const GrayImage& b, const char* op) {
  if (a.width() != b.width() || a.height() != b.height()) {
    throw std::invalid_argument(std::string(op) + ": image dimensions differ");
  }
}

double psnr_from_mse(double m) {
  if (m == 0.0) {
    return std::numeric_limits<double>::infinity();
  }
  return 10.0 * std::log10(65025.0 / m);
}

}  // namespace

WeightProfile::WeightProfile(std::string name, const std::array<double, 10>& weights)
    : name_(std::move(name)), weights_(weights) {
  if (name_.empty()) {
    throw std::invalid_argument("WeightProfile: name must not be empty");
  }
  for (double w : weights_) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw std::invalid_argument("WeightProfile '" + name_ +
                                  "': weights must be finite and non-negative");
    }
  }
  if (std::abs(sum() - 1.0) > 1e-9) {
    throw std::invalid_argument("WeightProfile '" + name_ +
                                "': weights must sum to 1");
  }
}

double WeightProfile::sum() const { return kahan_sum(weights_); }

WeightProfile WeightProfile::preset(int which) {
  if (which < 1 || which > 4) {
    throw std::invalid_argument("WeightProfile: preset index out of range 1..4");
  }
  std::array<double, 10> weights{};
  for (int i = 0; i < 10; ++i) {
    weights[i] = kPresetPermille[which - 1][i] / 1000.0;
  }
  return WeightProfile("table1-p" + std::to_string(which), weights);
}

const std::vector<WeightProfile>& WeightProfile::presets() {
  static const std::vector<WeightProfile> all = {preset(1), preset(2), preset(3),
                                                 preset(4)};
  return all;
}

WeightProfile WeightProfile::by_name(const std::string& name) {
  for (const WeightProfile& p : presets()) {
    if (p.name() == name) return p;
  }
  throw std::invalid_argument("unknown weight profile preset '" + name +
                              "' (expected table1-p1..table1-p4)");
}

double crc(const BitPlane& w, const BitPlane& w_star) {
  check_same_size_planes(w, w_star, "crc");
  std::uint64_t dot = 0;
  std::uint64_t sum_w = 0;
  std::uint64_t sum_ws = 0;
  const auto a = w.bits();
  const auto b = w_star.bits();
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += static_cast<std::uint64_t>(a[i] & b[i]);
    sum_w += a[i];
    sum_ws += b[i];
  }
  // An all-zero plane carries no signal: vacuously perfect when both are
  // empty, no evidence of the watermark when exactly one is.
  if (sum_w == 0 && sum_ws == 0) return 1.0;
  if (sum_w == 0 || sum_ws == 0) return 0.0;
  return static_cast<double>(dot) /
         std::sqrt(static_cast<double>(sum_w) * static_cast<double>(sum_ws));
}

double mse(const GrayImage& a, const GrayImage& b) {
  check_same_size_images(a, b, "mse");
  const auto pa = a.pixels();
  const auto pb = b.pixels();
  std::uint64_t sum = 0;
  for (std::size_t i = 0; i < pa.size(); ++i) {
    const std::int64_t d = static_cast<std::int64_t>(pa[i]) - pb[i];
    sum += static_cast<std::uint64_t>(d * d);
  }
  return static_cast<double>(sum) / static_cast<double>(pa.size());
}

double mse(const BitPlane& a, const BitPlane& b) {
  check_same_size_planes(a, b, "mse");
  const auto pa = a.bits();
  const auto pb = b.bits();
  std::uint64_t sum = 0;
  for (std::size_t i = 0; i < pa.size(); ++i) {
    sum += static_cast<std::uint64_t>(pa[i] != pb[i]);
  }
  return static_cast<double>(sum) / static_cast<double>(pa.size());
}

double psnr(const GrayImage& a, const GrayImage& b) { return psnr_from_mse(mse(a, b)); }

double psnr(const BitPlane& a, const BitPlane& b) { return psnr_from_mse(mse(a, b)); }

double weighted_crc(std::span<const double> crcs, const WeightProfile& profile) {
  if (crcs.size() != profile.weights().size()) {
    throw std::invalid_argument("weighted_crc: exactly 10 CRC values required");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < crcs.size(); ++i) {
    sum += crcs[i] * profile.weights()[i];
  }
  return sum;
}

}  // namespace bpwm
