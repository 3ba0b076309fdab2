#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bpwm/attacks.hpp"
#include "bpwm/metrics.hpp"
#include "bpwm/raster.hpp"

namespace bpwm {

// (l, k): cover plane l receives watermark plane k.
struct PlaneCombination {
  int image_plane;
  int watermark_plane;

  friend bool operator==(const PlaneCombination&, const PlaneCombination&) = default;
};

// "Com.(l,k)" as printed in reports.
std::string combination_label(const PlaneCombination& combo);

// Outcome of pushing one combination through embed -> attack x10 ->
// extract -> CRC. weighted[] is aligned to the profiles the evaluation
// was given and is recomputable from crcs.
struct EvaluationRecord {
  PlaneCombination combination;
  std::string label;
  std::array<double, kAttackCount> crcs;
  double fidelity_psnr;             // psnr(cover, watermarked)
  double recovery_psnr_no_attack;   // psnr(watermark plane, extracted plane)
  std::vector<double> weighted;
};

struct OptimizationReport {
  std::vector<EvaluationRecord> records;  // canonical order: l asc, k desc
  // Noise-pattern reference: pseudorandom plane at l = 8 ("Pseudo(8,8)"),
  // reported for comparison, never part of the argmax.
  std::optional<EvaluationRecord> baseline;
  std::vector<WeightProfile> profiles;
  std::vector<AttackSpec> attacks;
  std::uint64_t baseline_seed = 0;
  std::vector<PlaneCombination> selections;  // aligned to profiles
};

EvaluationRecord evaluate_combination(const GrayImage& cover,
                                      const GrayImage& watermark,
                                      const PlaneCombination& combo,
                                      std::span<const AttackSpec> attacks,
                                      std::span<const WeightProfile> profiles);

// Cross product of the two plane subsets, evaluated in canonical order
// (image plane ascending, watermark plane descending); the subsets may
// arrive in any order with duplicates.
OptimizationReport sweep(const GrayImage& cover, const GrayImage& watermark,
                         std::span<const int> image_planes,
                         std::span<const int> watermark_planes,
                         std::span<const AttackSpec> attacks,
                         std::span<const WeightProfile> profiles,
                         std::uint64_t baseline_seed = 42);

inline constexpr std::array<int, 2> kDefaultImagePlanes{7, 8};
inline constexpr std::array<int, 8> kDefaultWatermarkPlanes{1, 2, 3, 4, 5, 6, 7, 8};

// Argmax of weighted value over records; ties prefer the larger image
// plane, then the smaller watermark plane.
PlaneCombination argmax_combination(std::span<const EvaluationRecord> records,
                                    std::size_t profile_index);

PlaneCombination select_optimal(const OptimizationReport& report,
                                const WeightProfile& profile);

}  // namespace bpwm
