#include <cctype>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bpwm/attacks.hpp"
#include "bpwm/bitplane.hpp"
#include "bpwm/metrics.hpp"
#include "bpwm/optimizer.hpp"
#include "bpwm/raster.hpp"
#include "bpwm/report_io.hpp"

namespace {

using namespace bpwm;

// Required input missing from both the command line and the config file.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

constexpr std::uint64_t kDefaultSeed = 42;

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileIoError("cannot open " + path.string());
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  if (in.bad()) throw FileIoError("cannot read " + path.string());
  return text;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FileIoError("cannot open " + path.string() + " for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.flush();
  if (!out) throw FileIoError("cannot write " + path.string());
}

// "7", "7,8", "1-8", "1,3-5" -> expanded list, order preserved.
std::vector<int> parse_plane_list(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("plane list is empty");
  std::vector<int> planes;
  std::size_t i = 0;
  auto parse_num = [&text, &i]() -> int {
    std::size_t start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i == start || i - start > 2) {
      throw std::invalid_argument("bad plane list '" + text + "'");
    }
    return std::stoi(text.substr(start, i - start));
  };
  while (true) {
    int lo = parse_num();
    int hi = lo;
    if (i < text.size() && text[i] == '-') {
      ++i;
      hi = parse_num();
    }
    if (lo > hi) {
      throw std::invalid_argument("descending plane range in '" + text + "'");
    }
    for (int p = lo; p <= hi; ++p) planes.push_back(p);
    if (i == text.size()) break;
    if (text[i] != ',') throw std::invalid_argument("bad plane list '" + text + "'");
    ++i;
  }
  return planes;
}

RunConfig load_config(const CLI::Option* opt, const std::string& path) {
  if (opt->count() == 0) return {};
  return parse_run_config(read_text_file(path));
}

std::string require_str(const CLI::Option* opt, const std::string& flag_value,
                        const std::optional<std::string>& config_value,
                        const char* what) {
  if (opt->count() > 0) return flag_value;
  if (config_value) return *config_value;
  throw UsageError(std::string("missing required ") + what);
}

int require_plane(const CLI::Option* opt, int flag_value,
                  const std::optional<int>& config_value, const char* what) {
  if (opt->count() > 0) return flag_value;
  if (config_value) return *config_value;
  throw UsageError(std::string("missing required ") + what);
}

std::optional<std::string> optional_str(const CLI::Option* opt,
                                        const std::string& flag_value,
                                        const std::optional<std::string>& config_value) {
  if (opt->count() > 0) return flag_value;
  return config_value;
}

std::uint64_t resolve_seed(const CLI::Option* opt, std::uint64_t flag_value,
                           const std::optional<std::uint64_t>& config_value) {
  if (opt->count() > 0) return flag_value;
  if (config_value) return *config_value;
  return kDefaultSeed;
}

std::vector<int> resolve_planes(const CLI::Option* opt, const std::string& flag_value,
                                const std::optional<std::vector<int>>& config_value,
                                std::span<const int> fallback) {
  if (opt->count() > 0) return parse_plane_list(flag_value);
  if (config_value) return *config_value;
  return {fallback.begin(), fallback.end()};
}

std::vector<AttackSpec> resolve_attacks(const RunConfig& config, std::uint64_t seed) {
  if (config.attacks) return *config.attacks;
  const auto battery = default_battery(seed);
  return {battery.begin(), battery.end()};
}

std::vector<WeightProfile> resolve_profiles(const RunConfig& config) {
  if (config.profiles) return *config.profiles;
  return WeightProfile::presets();
}

GrayImage plane_to_image(const BitPlane& plane) {
  std::vector<std::uint8_t> pixels(plane.bits().begin(), plane.bits().end());
  for (std::uint8_t& p : pixels) p = p ? 255 : 0;
  return GrayImage(plane.width(), plane.height(), std::move(pixels));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bit-plane watermark embedding, attack simulation, and plane-pair optimization"};
  app.require_subcommand(1);

  // embed
  auto* embed_cmd = app.add_subcommand(
      "embed", "Replace cover plane l with watermark plane k, write the marked image");
  std::string em_config, em_cover, em_wm, em_out;
  int em_l = 0, em_k = 0;
  auto* em_config_o = embed_cmd->add_option("--config", em_config, "JSON config file");
  auto* em_cover_o = embed_cmd->add_option("--cover", em_cover, "cover PGM");
  auto* em_wm_o = embed_cmd->add_option("--watermark", em_wm, "watermark PGM");
  auto* em_l_o = embed_cmd->add_option("--image-plane", em_l, "cover plane l (1..8)");
  auto* em_k_o = embed_cmd->add_option("--wm-plane", em_k, "watermark plane k (1..8)");
  auto* em_out_o = embed_cmd->add_option("--out", em_out, "output PGM");

  // extract
  auto* extract_cmd = app.add_subcommand(
      "extract", "Extract plane l of an image as a 0/255 PGM");
  std::string ex_config, ex_in, ex_out;
  int ex_l = 0;
  auto* ex_config_o = extract_cmd->add_option("--config", ex_config, "JSON config file");
  auto* ex_in_o = extract_cmd->add_option("--in", ex_in, "input PGM");
  auto* ex_l_o = extract_cmd->add_option("--plane", ex_l, "plane l (1..8)");
  auto* ex_out_o = extract_cmd->add_option("--out", ex_out, "output PGM");

  // attack
  auto* attack_cmd = app.add_subcommand("attack", "Apply one attack to an image");
  std::string at_config, at_in, at_out, at_kind;
  double at_degrees = 0, at_fraction = 0, at_density = 0;
  int at_size = 0, at_step = 0, at_dx = 0, at_dy = 0, at_quality = 0, at_factor = 0;
  std::uint64_t at_seed = kDefaultSeed;
  auto* at_config_o = attack_cmd->add_option("--config", at_config, "JSON config file");
  auto* at_in_o = attack_cmd->add_option("--in", at_in, "input PGM");
  auto* at_out_o = attack_cmd->add_option("--out", at_out, "output PGM");
  auto* at_kind_o = attack_cmd->add_option(
      "--kind", at_kind,
      "attack kind: angle-rotation, rotate-transform, crop, low-pass-filter, "
      "quantization, translation, contrast-stretch, salt-pepper, compression, shrink");
  auto* at_degrees_o = attack_cmd->add_option("--degrees", at_degrees, "rotation angle");
  auto* at_fraction_o = attack_cmd->add_option("--fraction", at_fraction, "cropped fraction");
  auto* at_size_o = attack_cmd->add_option("--size", at_size, "filter window size (odd)");
  auto* at_step_o = attack_cmd->add_option("--step", at_step, "quantization step");
  auto* at_dx_o = attack_cmd->add_option("--dx", at_dx, "horizontal shift");
  auto* at_dy_o = attack_cmd->add_option("--dy", at_dy, "vertical shift");
  auto* at_density_o = attack_cmd->add_option("--density", at_density, "salt-pepper density");
  auto* at_seed_o = attack_cmd->add_option("--seed", at_seed, "salt-pepper seed (default 42)");
  auto* at_quality_o = attack_cmd->add_option("--quality", at_quality, "compression quality 1..100");
  auto* at_factor_o = attack_cmd->add_option("--factor", at_factor, "shrink factor");

  // evaluate
  auto* eval_cmd = app.add_subcommand(
      "evaluate", "Run one (l, k) combination through the full attack battery");
  std::string ev_config, ev_cover, ev_wm, ev_out_json;
  int ev_l = 0, ev_k = 0;
  std::uint64_t ev_seed = kDefaultSeed;
  auto* ev_config_o = eval_cmd->add_option("--config", ev_config, "JSON config file");
  auto* ev_cover_o = eval_cmd->add_option("--cover", ev_cover, "cover PGM");
  auto* ev_wm_o = eval_cmd->add_option("--watermark", ev_wm, "watermark PGM");
  auto* ev_l_o = eval_cmd->add_option("--image-plane", ev_l, "cover plane l (1..8)");
  auto* ev_k_o = eval_cmd->add_option("--wm-plane", ev_k, "watermark plane k (1..8)");
  auto* ev_out_json_o = eval_cmd->add_option(
      "--out-json", ev_out_json, "write the JSON record here instead of stdout");
  auto* ev_seed_o = eval_cmd->add_option("--seed", ev_seed, "default-battery seed (default 42)");

  // optimize
  auto* opt_cmd = app.add_subcommand(
      "optimize", "Sweep plane combinations, report the matrix, select the optimum per profile");
  std::string op_config, op_cover, op_wm, op_planes_l, op_planes_k, op_out_json, op_out_csv;
  std::uint64_t op_seed = kDefaultSeed;
  auto* op_config_o = opt_cmd->add_option("--config", op_config, "JSON config file");
  auto* op_cover_o = opt_cmd->add_option("--cover", op_cover, "cover PGM");
  auto* op_wm_o = opt_cmd->add_option("--watermark", op_wm, "watermark PGM");
  auto* op_planes_l_o = opt_cmd->add_option(
      "--image-planes", op_planes_l, "cover planes, e.g. 7,8 or 1-8 (default 7,8)");
  auto* op_planes_k_o = opt_cmd->add_option(
      "--wm-planes", op_planes_k, "watermark planes, e.g. 1-8 (default 1-8)");
  auto* op_out_json_o = opt_cmd->add_option(
      "--out-json", op_out_json, "JSON report path (default report.json)");
  auto* op_out_csv_o = opt_cmd->add_option(
      "--out-csv", op_out_csv, "CSV matrix path (default report.csv)");
  auto* op_seed_o = opt_cmd->add_option(
      "--seed", op_seed, "battery and baseline seed (default 42)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand(embed_cmd)) {
      const RunConfig cfg = load_config(em_config_o, em_config);
      const GrayImage cover =
          read_pgm_file(require_str(em_cover_o, em_cover, cfg.cover, "--cover"));
      const GrayImage wm =
          read_pgm_file(require_str(em_wm_o, em_wm, cfg.watermark, "--watermark"));
      const int l = require_plane(em_l_o, em_l, cfg.image_plane, "--image-plane");
      const int k = require_plane(em_k_o, em_k, cfg.watermark_plane, "--wm-plane");
      const std::string out = require_str(em_out_o, em_out, cfg.output, "--out");
      const GrayImage marked = embed(cover, wm, l, k);
      write_pgm_file(out, marked);
      std::cout << "fidelity_psnr " << format_fixed6(psnr(cover, marked)) << "\n";
    } else if (app.got_subcommand(extract_cmd)) {
      const RunConfig cfg = load_config(ex_config_o, ex_config);
      const GrayImage img =
          read_pgm_file(require_str(ex_in_o, ex_in, cfg.input, "--in"));
      const int l = require_plane(ex_l_o, ex_l, cfg.image_plane, "--plane");
      const std::string out = require_str(ex_out_o, ex_out, cfg.output, "--out");
      write_pgm_file(out, plane_to_image(extract_plane(img, l)));
    } else if (app.got_subcommand(attack_cmd)) {
      const RunConfig cfg = load_config(at_config_o, at_config);
      const GrayImage img =
          read_pgm_file(require_str(at_in_o, at_in, cfg.input, "--in"));
      const std::string out = require_str(at_out_o, at_out, cfg.output, "--out");
      AttackSpec spec;
      if (at_kind_o->count() > 0) {
        nlohmann::json j;
        j["kind"] = at_kind;
        if (at_degrees_o->count() > 0) j["degrees"] = at_degrees;
        if (at_fraction_o->count() > 0) j["fraction"] = at_fraction;
        if (at_size_o->count() > 0) j["size"] = at_size;
        if (at_step_o->count() > 0) j["step"] = at_step;
        if (at_dx_o->count() > 0) j["dx"] = at_dx;
        if (at_dy_o->count() > 0) j["dy"] = at_dy;
        if (at_density_o->count() > 0) j["density"] = at_density;
        if (at_quality_o->count() > 0) j["quality"] = at_quality;
        if (at_factor_o->count() > 0) j["factor"] = at_factor;
        if (at_kind == "salt-pepper" || at_seed_o->count() > 0) j["seed"] = at_seed;
        spec = attack_from_json(j);
      } else if (cfg.attacks && cfg.attacks->size() == 1) {
        spec = cfg.attacks->front();
      } else {
        throw UsageError("attack needs --kind or a config with exactly one attack");
      }
      write_pgm_file(out, apply_attack(img, spec));
    } else if (app.got_subcommand(eval_cmd)) {
      const RunConfig cfg = load_config(ev_config_o, ev_config);
      const GrayImage cover =
          read_pgm_file(require_str(ev_cover_o, ev_cover, cfg.cover, "--cover"));
      const GrayImage wm =
          read_pgm_file(require_str(ev_wm_o, ev_wm, cfg.watermark, "--watermark"));
      const int l = require_plane(ev_l_o, ev_l, cfg.image_plane, "--image-plane");
      const int k = require_plane(ev_k_o, ev_k, cfg.watermark_plane, "--wm-plane");
      const std::uint64_t seed = resolve_seed(ev_seed_o, ev_seed, cfg.seed);
      const std::vector<AttackSpec> attacks = resolve_attacks(cfg, seed);
      const std::vector<WeightProfile> profiles = resolve_profiles(cfg);
      const EvaluationRecord rec =
          evaluate_combination(cover, wm, PlaneCombination{l, k}, attacks, profiles);
      const std::string doc = record_to_json(rec, profiles, attacks);
      const std::optional<std::string> out_json =
          optional_str(ev_out_json_o, ev_out_json, cfg.out_json);
      if (out_json) {
        write_text_file(*out_json, doc);
        std::cout << "label " << rec.label << "\n";
        std::cout << "fidelity_psnr " << format_fixed6(rec.fidelity_psnr) << "\n";
        for (std::size_t i = 0; i < profiles.size(); ++i) {
          std::cout << "weighted " << profiles[i].name() << " "
                    << format_fixed6(rec.weighted[i]) << "\n";
        }
      } else {
        std::cout << doc;
      }
    } else if (app.got_subcommand(opt_cmd)) {
      const RunConfig cfg = load_config(op_config_o, op_config);
      const GrayImage cover =
          read_pgm_file(require_str(op_cover_o, op_cover, cfg.cover, "--cover"));
      const GrayImage wm =
          read_pgm_file(require_str(op_wm_o, op_wm, cfg.watermark, "--watermark"));
      const std::vector<int> image_planes = resolve_planes(
          op_planes_l_o, op_planes_l, cfg.image_planes, kDefaultImagePlanes);
      const std::vector<int> wm_planes = resolve_planes(
          op_planes_k_o, op_planes_k, cfg.watermark_planes, kDefaultWatermarkPlanes);
      const std::uint64_t seed = resolve_seed(op_seed_o, op_seed, cfg.seed);
      const std::vector<AttackSpec> attacks = resolve_attacks(cfg, seed);
      const std::vector<WeightProfile> profiles = resolve_profiles(cfg);
      const OptimizationReport report =
          sweep(cover, wm, image_planes, wm_planes, attacks, profiles, seed);
      const std::string out_json =
          optional_str(op_out_json_o, op_out_json, cfg.out_json).value_or("report.json");
      const std::string out_csv =
          optional_str(op_out_csv_o, op_out_csv, cfg.out_csv).value_or("report.csv");
      write_text_file(out_json, report_to_json(report));
      write_text_file(out_csv, report_to_csv(report));
      for (std::size_t i = 0; i < report.selections.size(); ++i) {
        std::cout << "selection " << report.profiles[i].name() << " "
                  << combination_label(report.selections[i]) << "\n";
      }
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const FileIoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const PgmDecodeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
