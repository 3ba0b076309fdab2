#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "bpwm/bitplane.hpp"
#include "bpwm/raster.hpp"

namespace bpwm {

// Ten attack weightings a1..a10 aligned to the canonical attack order.
// Weights must be non-negative and sum to 1; the sum is compensated
// (Kahan) so the bundled presets sum to 1.0 exactly in double.
class WeightProfile {
 public:
  WeightProfile(std::string name, const std::array<double, 10>& weights);

  const std::string& name() const { return name_; }
  const std::array<double, 10>& weights() const { return weights_; }
  double sum() const;

  // Bundled presets "table1-p1".."table1-p4":
  //   p1: equal weights 0.1
  //   p2: 0.05 x6, then 0.2, 0.2, 0.2, 0.1
  //   p3: 0.025, 0.05, 0.025, 0.025, 0.025, 0.05, 0.1, 0.4, 0.1, 0.2
  //   p4: 0.025, 0.025, 0.05, 0.05, 0.05, 0.05, 0.05, 0.2, 0.3, 0.2
  static WeightProfile preset(int which);  // 1..4
  static const std::vector<WeightProfile>& presets();
  static WeightProfile by_name(const std::string& name);  // "table1-pN"

 private:
  std::string name_;
  std::array<double, 10> weights_;
};

// Correlation of two binary planes: sum(w * w~) / sqrt(sum(w) * sum(w~)),
// in [0, 1]. Degenerate denominators: 1 when both planes are all-zero,
// 0 when exactly one is.
double crc(const BitPlane& w, const BitPlane& w_star);

double mse(const GrayImage& a, const GrayImage& b);
double mse(const BitPlane& a, const BitPlane& b);

// 10 * log10(255^2 / MSE); +infinity when the inputs are identical
// (serialized as "inf" in reports).
double psnr(const GrayImage& a, const GrayImage& b);
double psnr(const BitPlane& a, const BitPlane& b);

// Convex combination of the ten per-attack CRCs under a profile.
double weighted_crc(std::span<const double> crcs, const WeightProfile& profile);

}  // namespace bpwm
