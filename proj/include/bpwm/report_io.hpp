#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "bpwm/optimizer.hpp"

namespace bpwm {

// Report serialization. Numeric report values (CRCs, PSNRs, weighted
// CRCs) are emitted with 6 fixed decimals and infinite PSNR as the
// string "inf", so repeated runs produce byte-identical files.
std::string format_fixed6(double v);

nlohmann::json attack_to_json(const AttackSpec& spec);
AttackSpec attack_from_json(const nlohmann::json& j);

nlohmann::json profile_to_json(const WeightProfile& profile);
// Accepts a preset name ("table1-p1".."table1-p4") or
// {"name": ..., "weights": [ten values]}.
WeightProfile profile_from_json(const nlohmann::json& j);

// Single-record document (the `evaluate` subcommand output).
std::string record_to_json(const EvaluationRecord& record,
                           std::span<const WeightProfile> profiles,
                           std::span<const AttackSpec> attacks);

std::string report_to_json(const OptimizationReport& report);

// One row per combination in canonical order, then the pseudorandom
// baseline row when present. Columns: label, the ten per-attack CRCs,
// fidelity PSNR, one weighted-CRC column per profile.
std::string report_to_csv(const OptimizationReport& report);

// Semantic problem in a config or report input (maps to exit 4).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// JSON config file contents; every field optional, command-line flags
// override whatever the file sets.
struct RunConfig {
  std::optional<std::string> cover;
  std::optional<std::string> watermark;
  std::optional<std::string> input;
  std::optional<std::string> output;
  std::optional<std::string> out_json;
  std::optional<std::string> out_csv;
  std::optional<int> image_plane;
  std::optional<int> watermark_plane;
  std::optional<std::vector<int>> image_planes;
  std::optional<std::vector<int>> watermark_planes;
  std::optional<std::vector<AttackSpec>> attacks;
  std::optional<std::vector<WeightProfile>> profiles;
  std::optional<std::uint64_t> seed;
};

RunConfig parse_run_config(const std::string& json_text);

}  // namespace bpwm
