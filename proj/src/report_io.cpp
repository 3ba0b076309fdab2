#include "bpwm/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <initializer_list>
#include <string_view>

namespace bpwm {
namespace {

using nlohmann::json;

void require_keys(const json& j, std::string_view what,
                  std::initializer_list<std::string_view> allowed) {
  for (const auto& item : j.items()) {
    bool known = false;
    for (std::string_view k : allowed) known = known || item.key() == k;
    if (!known) {
      throw ConfigError(std::string(what) + ": unknown key '" + item.key() + "'");
    }
  }
}

double get_double(const json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_number()) {
    throw ConfigError(std::string("'") + key + "' must be a number");
  }
  return v.get<double>();
}

int get_int(const json& j, const char* key, int fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_number_integer()) {
    throw ConfigError(std::string("'") + key + "' must be an integer");
  }
  return v.get<int>();
}

std::uint64_t get_u64(const json& j, const char* key, std::uint64_t fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_number_integer()) {
    throw ConfigError(std::string("'") + key + "' must be a non-negative integer");
  }
  if (!v.is_number_unsigned() && v.get<std::int64_t>() < 0) {
    throw ConfigError(std::string("'") + key + "' must be a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

std::string json_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", static_cast<unsigned>(c));
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

// Fixed-decimal token, quoted when the value is infinite so the output
// stays valid JSON.
std::string json_number(double v) {
  if (std::isinf(v)) return v > 0 ? "\"inf\"" : "\"-inf\"";
  return format_fixed6(v);
}

void append_fixed6_array(std::string& out, std::span<const double> values) {
  out += '[';
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i != 0) out += ", ";
    out += json_number(values[i]);
  }
  out += ']';
}

// Emits "{ ...fields... }" with the opening brace on the current line;
// pad is the indentation of the line the brace starts on.
void append_record_object(std::string& out, const EvaluationRecord& rec,
                          const std::string& pad) {
  const std::string in = pad + "  ";
  out += "{\n";
  out += in + "\"label\": \"" + json_escape(rec.label) + "\",\n";
  out += in + "\"image_plane\": " + std::to_string(rec.combination.image_plane) + ",\n";
  out += in + "\"watermark_plane\": " +
         std::to_string(rec.combination.watermark_plane) + ",\n";
  out += in + "\"fidelity_psnr\": " + json_number(rec.fidelity_psnr) + ",\n";
  out += in + "\"recovery_psnr_no_attack\": " +
         json_number(rec.recovery_psnr_no_attack) + ",\n";
  out += in + "\"crcs\": ";
  append_fixed6_array(out, rec.crcs);
  out += ",\n";
  out += in + "\"weighted\": ";
  append_fixed6_array(out, rec.weighted);
  out += "\n";
  out += pad + "}";
}

void append_json_array(std::string& out, const std::string& key,
                       const std::vector<std::string>& elements) {
  out += "  \"" + key + "\": [";
  if (elements.empty()) {
    out += "],\n";
    return;
  }
  out += "\n";
  for (std::size_t i = 0; i < elements.size(); ++i) {
    out += "    " + elements[i];
    out += (i + 1 < elements.size()) ? ",\n" : "\n";
  }
  out += "  ],\n";
}

}  // namespace

std::string format_fixed6(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

json attack_to_json(const AttackSpec& spec) {
  json j;
  j["kind"] = std::string(attack_name(spec));
  std::visit(
      [&j](const auto& a) {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, AngleRotation> ||
                      std::is_same_v<T, RotateTransform>) {
          j["degrees"] = a.degrees;
        } else if constexpr (std::is_same_v<T, Crop>) {
          j["fraction"] = a.fraction;
        } else if constexpr (std::is_same_v<T, LowPassFilter>) {
          j["size"] = a.size;
        } else if constexpr (std::is_same_v<T, Quantization>) {
          j["step"] = a.step;
        } else if constexpr (std::is_same_v<T, Translation>) {
          j["dx"] = a.dx;
          j["dy"] = a.dy;
        } else if constexpr (std::is_same_v<T, SaltPepper>) {
          j["density"] = a.density;
          j["seed"] = a.seed;
        } else if constexpr (std::is_same_v<T, Compression>) {
          j["quality"] = a.quality;
        } else if constexpr (std::is_same_v<T, Shrink>) {
          j["factor"] = a.factor;
        }
      },
      spec);
  return j;
}

AttackSpec attack_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("attack must be a JSON object");
  if (!j.contains("kind") || !j.at("kind").is_string()) {
    throw ConfigError("attack needs a string 'kind'");
  }
  const std::string kind = j.at("kind").get<std::string>();

  AttackSpec spec;
  if (kind == "angle-rotation") {
    require_keys(j, kind, {"kind", "degrees"});
    spec = AngleRotation{get_double(j, "degrees", AngleRotation{}.degrees)};
  } else if (kind == "rotate-transform") {
    require_keys(j, kind, {"kind", "degrees"});
    spec = RotateTransform{get_double(j, "degrees", RotateTransform{}.degrees)};
  } else if (kind == "crop") {
    require_keys(j, kind, {"kind", "fraction"});
    spec = Crop{get_double(j, "fraction", Crop{}.fraction)};
  } else if (kind == "low-pass-filter") {
    require_keys(j, kind, {"kind", "size"});
    spec = LowPassFilter{get_int(j, "size", LowPassFilter{}.size)};
  } else if (kind == "quantization") {
    require_keys(j, kind, {"kind", "step"});
    spec = Quantization{get_int(j, "step", Quantization{}.step)};
  } else if (kind == "translation") {
    require_keys(j, kind, {"kind", "dx", "dy"});
    spec = Translation{get_int(j, "dx", Translation{}.dx),
                       get_int(j, "dy", Translation{}.dy)};
  } else if (kind == "contrast-stretch") {
    require_keys(j, kind, {"kind"});
    spec = ContrastStretch{};
  } else if (kind == "salt-pepper") {
    require_keys(j, kind, {"kind", "density", "seed"});
    spec = SaltPepper{get_double(j, "density", SaltPepper{}.density),
                      get_u64(j, "seed", SaltPepper{}.seed)};
  } else if (kind == "compression") {
    require_keys(j, kind, {"kind", "quality"});
    spec = Compression{get_int(j, "quality", Compression{}.quality)};
  } else if (kind == "shrink") {
    require_keys(j, kind, {"kind", "factor"});
    spec = Shrink{get_int(j, "factor", Shrink{}.factor)};
  } else {
    throw ConfigError("unknown attack kind '" + kind + "'");
  }

  try {
    validate_attack(spec);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return spec;
}

json profile_to_json(const WeightProfile& profile) {
  json j;
  j["name"] = profile.name();
  j["weights"] = profile.weights();
  return j;
}

WeightProfile profile_from_json(const json& j) {
  try {
    if (j.is_string()) return WeightProfile::by_name(j.get<std::string>());
    if (!j.is_object()) {
      throw ConfigError("profile must be a preset name or a {name, weights} object");
    }
    require_keys(j, "profile", {"name", "weights"});
    if (!j.contains("name") || !j.at("name").is_string()) {
      throw ConfigError("profile needs a string 'name'");
    }
    if (!j.contains("weights") || !j.at("weights").is_array() ||
        j.at("weights").size() != 10) {
      throw ConfigError("profile needs a 'weights' array of 10 numbers");
    }
    std::array<double, 10> w{};
    for (std::size_t i = 0; i < w.size(); ++i) {
      const json& e = j.at("weights")[i];
      if (!e.is_number()) throw ConfigError("profile weights must be numbers");
      w[i] = e.get<double>();
    }
    return WeightProfile(j.at("name").get<std::string>(), w);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

std::string record_to_json(const EvaluationRecord& record,
                           std::span<const WeightProfile> profiles,
                           std::span<const AttackSpec> attacks) {
  std::string out = "{\n";
  out += "  \"schema\": \"bpwm-record-v1\",\n";

  std::vector<std::string> attack_lines;
  attack_lines.reserve(attacks.size());
  for (const AttackSpec& a : attacks) attack_lines.push_back(attack_to_json(a).dump());
  append_json_array(out, "attacks", attack_lines);

  std::vector<std::string> profile_lines;
  profile_lines.reserve(profiles.size());
  for (const WeightProfile& p : profiles) {
    profile_lines.push_back(profile_to_json(p).dump());
  }
  append_json_array(out, "profiles", profile_lines);

  out += "  \"record\": ";
  append_record_object(out, record, "  ");
  out += "\n}\n";
  return out;
}

std::string report_to_json(const OptimizationReport& report) {
  std::string out = "{\n";
  out += "  \"schema\": \"bpwm-report-v1\",\n";
  out += "  \"baseline_seed\": " + std::to_string(report.baseline_seed) + ",\n";

  std::vector<std::string> attack_lines;
  attack_lines.reserve(report.attacks.size());
  for (const AttackSpec& a : report.attacks) {
    attack_lines.push_back(attack_to_json(a).dump());
  }
  append_json_array(out, "attacks", attack_lines);

  std::vector<std::string> profile_lines;
  profile_lines.reserve(report.profiles.size());
  for (const WeightProfile& p : report.profiles) {
    profile_lines.push_back(profile_to_json(p).dump());
  }
  append_json_array(out, "profiles", profile_lines);

  out += "  \"records\": [";
  if (report.records.empty()) {
    out += "],\n";
  } else {
    out += "\n";
    for (std::size_t i = 0; i < report.records.size(); ++i) {
      out += "    ";
      append_record_object(out, report.records[i], "    ");
      out += (i + 1 < report.records.size()) ? ",\n" : "\n";
    }
    out += "  ],\n";
  }

  out += "  \"baseline\": ";
  if (report.baseline) {
    append_record_object(out, *report.baseline, "  ");
  } else {
    out += "null";
  }
  out += ",\n";

  out += "  \"selections\": [";
  if (report.selections.empty()) {
    out += "]\n";
  } else {
    out += "\n";
    for (std::size_t i = 0; i < report.selections.size(); ++i) {
      const PlaneCombination& sel = report.selections[i];
      const std::string profile_name =
          i < report.profiles.size() ? report.profiles[i].name() : std::string();
      out += "    {\"profile\": \"" + json_escape(profile_name) +
             "\", \"image_plane\": " + std::to_string(sel.image_plane) +
             ", \"watermark_plane\": " + std::to_string(sel.watermark_plane) +
             ", \"label\": \"" + json_escape(combination_label(sel)) + "\"}";
      out += (i + 1 < report.selections.size()) ? ",\n" : "\n";
    }
    out += "  ]\n";
  }
  out += "}\n";
  return out;
}

std::string report_to_csv(const OptimizationReport& report) {
  std::string out = "combination";
  for (const AttackSpec& a : report.attacks) {
    out += ',';
    out += attack_name(a);
  }
  out += ",fidelity_psnr";
  for (const WeightProfile& p : report.profiles) {
    out += ',';
    out += p.name();
  }
  out += '\n';

  // Labels carry a comma ("Com.(7,1)"), so the label field is quoted.
  auto row = [&out](const EvaluationRecord& rec) {
    out += '"';
    out += rec.label;
    out += '"';
    for (double c : rec.crcs) {
      out += ',';
      out += format_fixed6(c);
    }
    out += ',';
    out += format_fixed6(rec.fidelity_psnr);
    for (double w : rec.weighted) {
      out += ',';
      out += format_fixed6(w);
    }
    out += '\n';
  };
  for (const EvaluationRecord& rec : report.records) row(rec);
  if (report.baseline) row(*report.baseline);
  return out;
}

RunConfig parse_run_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config root must be a JSON object");
  require_keys(j, "config",
               {"cover", "watermark", "input", "output", "out_json", "out_csv",
                "image_plane", "watermark_plane", "image_planes",
                "watermark_planes", "attacks", "profiles", "seed"});

  RunConfig cfg;
  auto get_str = [&j](const char* key) -> std::optional<std::string> {
    if (!j.contains(key)) return std::nullopt;
    const json& v = j.at(key);
    if (!v.is_string()) {
      throw ConfigError(std::string("'") + key + "' must be a string");
    }
    return v.get<std::string>();
  };
  auto get_plane = [&j](const char* key) -> std::optional<int> {
    if (!j.contains(key)) return std::nullopt;
    const json& v = j.at(key);
    if (!v.is_number_integer()) {
      throw ConfigError(std::string("'") + key + "' must be an integer");
    }
    return v.get<int>();
  };
  auto get_plane_list = [&j](const char* key) -> std::optional<std::vector<int>> {
    if (!j.contains(key)) return std::nullopt;
    const json& v = j.at(key);
    if (!v.is_array()) {
      throw ConfigError(std::string("'") + key + "' must be an array of integers");
    }
    std::vector<int> planes;
    planes.reserve(v.size());
    for (const json& e : v) {
      if (!e.is_number_integer()) {
        throw ConfigError(std::string("'") + key + "' must be an array of integers");
      }
      planes.push_back(e.get<int>());
    }
    return planes;
  };

  cfg.cover = get_str("cover");
  cfg.watermark = get_str("watermark");
  cfg.input = get_str("input");
  cfg.output = get_str("output");
  cfg.out_json = get_str("out_json");
  cfg.out_csv = get_str("out_csv");
  cfg.image_plane = get_plane("image_plane");
  cfg.watermark_plane = get_plane("watermark_plane");
  cfg.image_planes = get_plane_list("image_planes");
  cfg.watermark_planes = get_plane_list("watermark_planes");

  if (j.contains("attacks")) {
    const json& v = j.at("attacks");
    if (!v.is_array()) throw ConfigError("'attacks' must be an array");
    std::vector<AttackSpec> attacks;
    attacks.reserve(v.size());
    for (const json& e : v) attacks.push_back(attack_from_json(e));
    cfg.attacks = std::move(attacks);
  }
  if (j.contains("profiles")) {
    const json& v = j.at("profiles");
    if (!v.is_array()) throw ConfigError("'profiles' must be an array");
    std::vector<WeightProfile> profiles;
    profiles.reserve(v.size());
    for (const json& e : v) profiles.push_back(profile_from_json(e));
    cfg.profiles = std::move(profiles);
  }
  if (j.contains("seed")) cfg.seed = get_u64(j, "seed", 0);
  return cfg;
}

}  // namespace bpwm
