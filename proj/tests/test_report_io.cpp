#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "bpwm/optimizer.hpp"
#include "bpwm/report_io.hpp"
#include "bpwm/rng.hpp"
#include "oracles.hpp"

using namespace bpwm;
using nlohmann::json;

namespace {

GrayImage random_image(std::uint64_t seed, int w, int h) {
  SplitMix64 rng(seed);
  return GrayImage(w, h, oracle::random_pixels(rng, std::size_t(w) * h));
}

OptimizationReport small_report() {
  const GrayImage cover = random_image(81, 16, 16);
  const GrayImage wm = random_image(83, 16, 16);
  return sweep(cover, wm, kDefaultImagePlanes, kDefaultWatermarkPlanes,
               default_battery(42), WeightProfile::presets(), 42);
}

// Split one CSV line, honoring double quotes.
std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (char c : line) {
    if (c == '"') {
      quoted = !quoted;
    } else if (c == ',' && !quoted) {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  fields.push_back(cur);
  return fields;
}

}  // namespace

TEST_CASE("format_fixed6 is plain six-decimal fixed point") {
  CHECK(format_fixed6(1.0) == "1.000000");
  CHECK(format_fixed6(0.0) == "0.000000");
  CHECK(format_fixed6(0.1234567) == "0.123457");
  CHECK(format_fixed6(45.12050365203929) == "45.120504");
  CHECK(format_fixed6(std::numeric_limits<double>::infinity()) == "inf");
}

TEST_CASE("attack specs round-trip through JSON") {
  const auto battery = default_battery(13);
  for (const AttackSpec& spec : battery) {
    const json j = attack_to_json(spec);
    CHECK(j.at("kind").get<std::string>() == attack_name(spec));
    const AttackSpec back = attack_from_json(j);
    CHECK(attack_to_json(back) == j);
  }
  CHECK(attack_to_json(battery[7]).at("seed").get<std::uint64_t>() == 13);
}

TEST_CASE("attack_from_json fills defaults but rejects junk") {
  const AttackSpec crop = attack_from_json(json{{"kind", "crop"}});
  CHECK(std::get<Crop>(crop).fraction == 0.41);

  CHECK_THROWS_AS(attack_from_json(json::array()), ConfigError);
  CHECK_THROWS_AS(attack_from_json(json{{"kind", "sepia"}}), ConfigError);
  CHECK_THROWS_AS(attack_from_json(json{{"fraction", 0.1}}), ConfigError);
  CHECK_THROWS_AS(attack_from_json(json{{"kind", "crop"}, {"degrees", 5}}), ConfigError);
  CHECK_THROWS_AS(attack_from_json(json{{"kind", "crop"}, {"fraction", "x"}}), ConfigError);
  CHECK_THROWS_AS(attack_from_json(json{{"kind", "crop"}, {"fraction", 1.5}}), ConfigError);
  CHECK_THROWS_AS(attack_from_json(json{{"kind", "low-pass-filter"}, {"size", 2}}),
                  ConfigError);
  CHECK_THROWS_AS(attack_from_json(json{{"kind", "salt-pepper"}, {"seed", -1}}),
                  ConfigError);
}

TEST_CASE("profiles load from preset names or inline weights") {
  const WeightProfile p2 = profile_from_json(json("table1-p2"));
  CHECK(p2.name() == "table1-p2");
  CHECK(p2.weights()[6] == 0.2);

  json inline_profile;
  inline_profile["name"] = "custom";
  inline_profile["weights"] = std::vector<double>(10, 0.1);
  const WeightProfile custom = profile_from_json(inline_profile);
  CHECK(custom.name() == "custom");
  CHECK(custom.sum() == 1.0);

  CHECK_THROWS_AS(profile_from_json(json("table1-p7")), ConfigError);
  CHECK_THROWS_AS(profile_from_json(json(3)), ConfigError);
  inline_profile["weights"] = std::vector<double>(9, 0.1);
  CHECK_THROWS_AS(profile_from_json(inline_profile), ConfigError);
  inline_profile["weights"] = std::vector<double>(10, 0.2);
  CHECK_THROWS_AS(profile_from_json(inline_profile), ConfigError);
  inline_profile["weights"] = std::vector<double>(10, 0.1);
  inline_profile["extra"] = 1;
  CHECK_THROWS_AS(profile_from_json(inline_profile), ConfigError);
}

TEST_CASE("record document is valid JSON with the promised fields") {
  const GrayImage cover = random_image(85, 16, 16);
  const GrayImage wm = random_image(87, 16, 16);
  const auto battery = default_battery(42);
  const auto& profiles = WeightProfile::presets();
  const EvaluationRecord rec = evaluate_combination(
      cover, wm, PlaneCombination{7, 1}, battery, profiles);

  const std::string doc = record_to_json(rec, profiles, battery);
  const json parsed = json::parse(doc);
  CHECK(parsed.at("schema") == "bpwm-record-v1");
  CHECK(parsed.at("attacks").size() == 10);
  CHECK(parsed.at("profiles").size() == 4);
  const json& r = parsed.at("record");
  CHECK(r.at("label") == "Com.(7,1)");
  CHECK(r.at("image_plane") == 7);
  CHECK(r.at("watermark_plane") == 1);
  CHECK(r.at("crcs").size() == 10);
  CHECK(r.at("weighted").size() == 4);
  // No attack in between, so recovery is perfect and serialized as "inf".
  CHECK(r.at("recovery_psnr_no_attack") == "inf");
  for (std::size_t i = 0; i < 10; ++i) {
    CHECK(r.at("crcs")[i].get<double>() ==
          doctest::Approx(rec.crcs[i]).epsilon(1e-6));
  }
}

TEST_CASE("report JSON carries records, baseline, and selections") {
  const OptimizationReport report = small_report();
  const std::string doc = report_to_json(report);
  const json parsed = json::parse(doc);
  CHECK(parsed.at("schema") == "bpwm-report-v1");
  CHECK(parsed.at("baseline_seed") == 42);
  CHECK(parsed.at("records").size() == 16);
  CHECK(parsed.at("records")[0].at("label") == "Com.(7,8)");
  CHECK(parsed.at("baseline").at("label") == "Pseudo(8,8)");
  REQUIRE(parsed.at("selections").size() == 4);
  for (std::size_t p = 0; p < 4; ++p) {
    const json& sel = parsed.at("selections")[p];
    CHECK(sel.at("profile") == report.profiles[p].name());
    CHECK(sel.at("image_plane") == report.selections[p].image_plane);
    CHECK(sel.at("watermark_plane") == report.selections[p].watermark_plane);
  }
  // Deterministic emission.
  CHECK(report_to_json(report) == doc);
}

TEST_CASE("CSV matrix matches the JSON content cell for cell") {
  const OptimizationReport report = small_report();
  const std::string csv = report_to_csv(report);

  std::istringstream lines(csv);
  std::string line;
  REQUIRE(std::getline(lines, line));
  const auto header = split_csv(line);
  REQUIRE(header.size() == 1 + 10 + 1 + 4);
  CHECK(header[0] == "combination");
  CHECK(header[1] == "angle-rotation");
  CHECK(header[10] == "shrink");
  CHECK(header[11] == "fidelity_psnr");
  CHECK(header[12] == "table1-p1");
  CHECK(header[15] == "table1-p4");

  std::vector<std::vector<std::string>> rows;
  while (std::getline(lines, line)) rows.push_back(split_csv(line));
  REQUIRE(rows.size() == 17);  // 16 combinations + baseline
  CHECK(rows[0][0] == "Com.(7,8)");
  CHECK(rows[15][0] == "Com.(8,1)");
  CHECK(rows[16][0] == "Pseudo(8,8)");

  for (std::size_t i = 0; i < 16; ++i) {
    const EvaluationRecord& rec = report.records[i];
    for (int a = 0; a < 10; ++a) CHECK(rows[i][1 + a] == format_fixed6(rec.crcs[a]));
    CHECK(rows[i][11] == format_fixed6(rec.fidelity_psnr));
    for (int p = 0; p < 4; ++p) CHECK(rows[i][12 + p] == format_fixed6(rec.weighted[p]));
  }
}

TEST_CASE("parse_run_config reads every field and rejects unknowns") {
  const std::string text = R"({
    "cover": "c.pgm",
    "watermark": "w.pgm",
    "input": "in.pgm",
    "output": "out.pgm",
    "out_json": "r.json",
    "out_csv": "r.csv",
    "image_plane": 7,
    "watermark_plane": 1,
    "image_planes": [7, 8],
    "watermark_planes": [1, 2, 3],
    "attacks": [{"kind": "crop", "fraction": 0.25}],
    "profiles": ["table1-p1", {"name": "even", "weights": [0.1,0.1,0.1,0.1,0.1,0.1,0.1,0.1,0.1,0.1]}],
    "seed": 7
  })";
  const RunConfig cfg = parse_run_config(text);
  CHECK(cfg.cover == "c.pgm");
  CHECK(cfg.watermark == "w.pgm");
  CHECK(cfg.input == "in.pgm");
  CHECK(cfg.output == "out.pgm");
  CHECK(cfg.out_json == "r.json");
  CHECK(cfg.out_csv == "r.csv");
  CHECK(cfg.image_plane == 7);
  CHECK(cfg.watermark_plane == 1);
  CHECK(cfg.image_planes == std::vector<int>{7, 8});
  CHECK(cfg.watermark_planes == std::vector<int>{1, 2, 3});
  REQUIRE(cfg.attacks.has_value());
  CHECK(std::get<Crop>(cfg.attacks->at(0)).fraction == 0.25);
  REQUIRE(cfg.profiles.has_value());
  CHECK(cfg.profiles->size() == 2);
  CHECK(cfg.seed == 7);

  CHECK_THROWS_AS(parse_run_config("not json"), ConfigError);
  CHECK_THROWS_AS(parse_run_config("[1,2]"), ConfigError);
  CHECK_THROWS_AS(parse_run_config(R"({"coverr": "x"})"), ConfigError);
  CHECK_THROWS_AS(parse_run_config(R"({"image_plane": "7"})"), ConfigError);
  CHECK_THROWS_AS(parse_run_config(R"({"image_planes": 7})"), ConfigError);
  CHECK_THROWS_AS(parse_run_config(R"({"image_planes": ["7"]})"), ConfigError);
  CHECK_THROWS_AS(parse_run_config(R"({"attacks": {"kind": "crop"}})"), ConfigError);
  CHECK_THROWS_AS(parse_run_config(R"({"seed": -4})"), ConfigError);
  CHECK_THROWS_AS(parse_run_config(R"({"profiles": ["mystery"]})"), ConfigError);
}

TEST_CASE("an empty config object is fine and fully unset") {
  const RunConfig cfg = parse_run_config("{}");
  CHECK_FALSE(cfg.cover.has_value());
  CHECK_FALSE(cfg.attacks.has_value());
  CHECK_FALSE(cfg.profiles.has_value());
  CHECK_FALSE(cfg.seed.has_value());
}
