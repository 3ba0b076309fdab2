#include "bpwm/optimizer.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>

#include "bpwm/bitplane.hpp"

namespace bpwm {
namespace {

void check_plane_subset(std::span<const int> planes, const char* which) {
  if (planes.empty()) {
    throw std::invalid_argument(std::string("sweep: empty ") + which + " subset");
  }
  for (int p : planes) {
    if (p < 1 || p > 8) {
      throw std::invalid_argument(std::string("sweep: ") + which + " plane " +
                                  std::to_string(p) + " out of range 1..8");
    }
  }
}

void check_attack_count(std::span<const AttackSpec> attacks) {
  if (attacks.size() != kAttackCount) {
    throw std::invalid_argument("exactly 10 attacks required in canonical order, got " +
                                std::to_string(attacks.size()));
  }
}

// Candidate beats incumbent on weighted value, then larger image plane
// (better fidelity near the LSB), then smaller watermark plane (stronger
// watermark bits).
bool beats(const EvaluationRecord& cand, double cand_w, const EvaluationRecord& inc,
           double inc_w) {
  if (cand_w != inc_w) return cand_w > inc_w;
  if (cand.combination.image_plane != inc.combination.image_plane) {
    return cand.combination.image_plane > inc.combination.image_plane;
  }
  return cand.combination.watermark_plane < inc.combination.watermark_plane;
}

}  // namespace

std::string combination_label(const PlaneCombination& combo) {
  return "Com.(" + std::to_string(combo.image_plane) + "," +
         std::to_string(combo.watermark_plane) + ")";
}

EvaluationRecord evaluate_combination(const GrayImage& cover,
                                      const GrayImage& watermark,
                                      const PlaneCombination& combo,
                                      std::span<const AttackSpec> attacks,
                                      std::span<const WeightProfile> profiles) {
  check_attack_count(attacks);

  const GrayImage marked =
      embed(cover, watermark, combo.image_plane, combo.watermark_plane);
  const BitPlane wm_plane = extract_plane(watermark, combo.watermark_plane);

  EvaluationRecord rec;
  rec.combination = combo;
  rec.label = combination_label(combo);
  rec.fidelity_psnr = psnr(cover, marked);
  rec.recovery_psnr_no_attack =
      psnr(wm_plane, extract_plane(marked, combo.image_plane));
  for (std::size_t i = 0; i < kAttackCount; ++i) {
    const GrayImage attacked = apply_attack(marked, attacks[i]);
    rec.crcs[i] = crc(wm_plane, extract_plane(attacked, combo.image_plane));
  }
  rec.weighted.reserve(profiles.size());
  for (const WeightProfile& p : profiles) {
    rec.weighted.push_back(weighted_crc(rec.crcs, p));
  }
  return rec;
}

OptimizationReport sweep(const GrayImage& cover, const GrayImage& watermark,
                         std::span<const int> image_planes,
                         std::span<const int> watermark_planes,
                         std::span<const AttackSpec> attacks,
                         std::span<const WeightProfile> profiles,
                         std::uint64_t baseline_seed) {
  check_plane_subset(image_planes, "image");
  check_plane_subset(watermark_planes, "watermark");
  check_attack_count(attacks);

  // Canonical evaluation order: image plane ascending, watermark plane
  // descending, regardless of how the subsets were passed in.
  std::set<int> ls(image_planes.begin(), image_planes.end());
  std::set<int, std::greater<int>> ks(watermark_planes.begin(), watermark_planes.end());

  OptimizationReport report;
  report.profiles.assign(profiles.begin(), profiles.end());
  report.attacks.assign(attacks.begin(), attacks.end());
  report.baseline_seed = baseline_seed;
  for (int l : ls) {
    for (int k : ks) {
      report.records.push_back(
          evaluate_combination(cover, watermark, PlaneCombination{l, k}, attacks, profiles));
    }
  }

  // Noise-pattern baseline: a Bernoulli(0.5) plane as the watermark LSB,
  // embedded in the cover LSB and pushed through the same pipeline.
  const BitPlane noise =
      pseudorandom_plane(baseline_seed, cover.width(), cover.height());
  const GrayImage noise_watermark(
      cover.width(), cover.height(),
      std::vector<std::uint8_t>(noise.bits().begin(), noise.bits().end()));
  EvaluationRecord base = evaluate_combination(cover, noise_watermark,
                                               PlaneCombination{8, 8}, attacks, profiles);
  base.label = "Pseudo(8,8)";
  report.baseline = std::move(base);

  report.selections.reserve(report.profiles.size());
  for (std::size_t pi = 0; pi < report.profiles.size(); ++pi) {
    report.selections.push_back(argmax_combination(report.records, pi));
  }
  return report;
}

PlaneCombination argmax_combination(std::span<const EvaluationRecord> records,
                                    std::size_t profile_index) {
  if (records.empty()) {
    throw std::invalid_argument("argmax_combination: no records");
  }
  const EvaluationRecord* best = nullptr;
  for (const EvaluationRecord& rec : records) {
    if (profile_index >= rec.weighted.size()) {
      throw std::invalid_argument("argmax_combination: profile index out of range");
    }
    if (best == nullptr ||
        beats(rec, rec.weighted[profile_index], *best, best->weighted[profile_index])) {
      best = &rec;
    }
  }
  return best->combination;
}

PlaneCombination select_optimal(const OptimizationReport& report,
                                const WeightProfile& profile) {
  for (std::size_t pi = 0; pi < report.profiles.size(); ++pi) {
    if (report.profiles[pi].name() == profile.name()) {
      if (report.profiles[pi].weights() != profile.weights()) {
        throw std::invalid_argument("select_optimal: profile '" + profile.name() +
                                    "' differs from the one evaluated in the report");
      }
      return argmax_combination(report.records, pi);
    }
  }
  throw std::invalid_argument("select_optimal: profile '" + profile.name() +
                              "' not present in the report");
}

}  // namespace bpwm
