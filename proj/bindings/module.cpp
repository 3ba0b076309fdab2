#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "bpwm/attacks.hpp"
#include "bpwm/bitplane.hpp"
#include "bpwm/metrics.hpp"
#include "bpwm/optimizer.hpp"
#include "bpwm/raster.hpp"
#include "bpwm/report_io.hpp"

namespace py = pybind11;
using nlohmann::json;

namespace {

using U8Array = py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>;

bpwm::GrayImage image_from_array(const U8Array& arr) {
  if (arr.ndim() != 2) {
    throw std::invalid_argument("expected a 2-D uint8 array (rows, cols)");
  }
  const int h = static_cast<int>(arr.shape(0));
  const int w = static_cast<int>(arr.shape(1));
  std::vector<std::uint8_t> px(arr.data(), arr.data() + arr.size());
  return bpwm::GrayImage(w, h, std::move(px));
}

py::array_t<std::uint8_t> array_from_image(const bpwm::GrayImage& img) {
  py::array_t<std::uint8_t> arr({img.height(), img.width()});
  std::copy(img.pixels().begin(), img.pixels().end(), arr.mutable_data());
  return arr;
}

bpwm::BitPlane plane_from_array(const U8Array& arr, int plane_index) {
  if (arr.ndim() != 2) {
    throw std::invalid_argument("expected a 2-D uint8 array of 0/1 bits");
  }
  const int h = static_cast<int>(arr.shape(0));
  const int w = static_cast<int>(arr.shape(1));
  std::vector<std::uint8_t> bits(arr.data(), arr.data() + arr.size());
  return bpwm::BitPlane(w, h, std::move(bits), plane_index);
}

py::array_t<std::uint8_t> array_from_plane(const bpwm::BitPlane& plane) {
  py::array_t<std::uint8_t> arr({plane.height(), plane.width()});
  std::copy(plane.bits().begin(), plane.bits().end(), arr.mutable_data());
  return arr;
}

json py_to_json(py::handle h) {
  if (h.is_none()) return nullptr;
  if (py::isinstance<py::bool_>(h)) return h.cast<bool>();
  if (py::isinstance<py::int_>(h)) {
    try {
      return h.cast<std::int64_t>();
    } catch (const py::cast_error&) {
      return h.cast<std::uint64_t>();
    }
  }
  if (py::isinstance<py::float_>(h)) return h.cast<double>();
  if (py::isinstance<py::str>(h)) return h.cast<std::string>();
  if (py::isinstance<py::dict>(h)) {
    json o = json::object();
    for (auto item : h.cast<py::dict>()) {
      o[item.first.cast<std::string>()] = py_to_json(item.second);
    }
    return o;
  }
  if (py::isinstance<py::list>(h) || py::isinstance<py::tuple>(h)) {
    json a = json::array();
    for (auto e : h.cast<py::sequence>()) a.push_back(py_to_json(e));
    return a;
  }
  throw py::type_error("unsupported value type in attack/profile description");
}

py::object json_to_py(const json& j) {
  switch (j.type()) {
    case json::value_t::null:
      return py::none();
    case json::value_t::boolean:
      return py::bool_(j.get<bool>());
    case json::value_t::number_integer:
      return py::int_(j.get<std::int64_t>());
    case json::value_t::number_unsigned:
      return py::int_(j.get<std::uint64_t>());
    case json::value_t::number_float:
      return py::float_(j.get<double>());
    case json::value_t::string:
      return py::str(j.get<std::string>());
    case json::value_t::array: {
      py::list out;
      for (const json& e : j) out.append(json_to_py(e));
      return out;
    }
    case json::value_t::object: {
      py::dict out;
      for (const auto& item : j.items()) {
        out[py::str(item.key())] = json_to_py(item.value());
      }
      return out;
    }
    default:
      return py::none();
  }
}

std::vector<bpwm::AttackSpec> attacks_from_py(py::object attacks, std::uint64_t seed) {
  if (attacks.is_none()) {
    const auto battery = bpwm::default_battery(seed);
    return {battery.begin(), battery.end()};
  }
  std::vector<bpwm::AttackSpec> out;
  for (auto e : attacks.cast<py::sequence>()) {
    out.push_back(bpwm::attack_from_json(py_to_json(e)));
  }
  return out;
}

std::vector<bpwm::WeightProfile> profiles_from_py(py::object profiles) {
  if (profiles.is_none()) return bpwm::WeightProfile::presets();
  std::vector<bpwm::WeightProfile> out;
  for (auto e : profiles.cast<py::sequence>()) {
    out.push_back(bpwm::profile_from_json(py_to_json(e)));
  }
  return out;
}

py::dict record_to_py(const bpwm::EvaluationRecord& rec) {
  py::dict d;
  d["label"] = rec.label;
  d["image_plane"] = rec.combination.image_plane;
  d["watermark_plane"] = rec.combination.watermark_plane;
  d["fidelity_psnr"] = rec.fidelity_psnr;
  d["recovery_psnr_no_attack"] = rec.recovery_psnr_no_attack;
  py::list crcs;
  for (double c : rec.crcs) crcs.append(c);
  d["crcs"] = crcs;
  py::list weighted;
  for (double w : rec.weighted) weighted.append(w);
  d["weighted"] = weighted;
  return d;
}

py::dict report_to_py(const bpwm::OptimizationReport& report) {
  py::dict d;
  py::list records;
  for (const auto& rec : report.records) records.append(record_to_py(rec));
  d["records"] = records;
  d["baseline"] = report.baseline ? py::object(record_to_py(*report.baseline))
                                  : py::object(py::none());
  py::list profiles;
  for (const auto& p : report.profiles) {
    profiles.append(json_to_py(bpwm::profile_to_json(p)));
  }
  d["profiles"] = profiles;
  py::list attacks;
  for (const auto& a : report.attacks) {
    attacks.append(json_to_py(bpwm::attack_to_json(a)));
  }
  d["attacks"] = attacks;
  d["baseline_seed"] = report.baseline_seed;
  py::list selections;
  for (std::size_t i = 0; i < report.selections.size(); ++i) {
    py::dict s;
    s["profile"] = i < report.profiles.size() ? py::object(py::str(report.profiles[i].name()))
                                              : py::object(py::none());
    s["image_plane"] = report.selections[i].image_plane;
    s["watermark_plane"] = report.selections[i].watermark_plane;
    s["label"] = bpwm::combination_label(report.selections[i]);
    selections.append(s);
  }
  d["selections"] = selections;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "bit-plane watermarking core: embed, attack, score, optimize";
#ifdef BPWM_VERSION
  m.attr("__version__") = BPWM_VERSION;
#endif

  py::register_exception<bpwm::PgmDecodeError>(m, "PgmDecodeError", PyExc_ValueError);
  py::register_exception<bpwm::FileIoError>(m, "FileIoError", PyExc_OSError);
  py::register_exception<bpwm::ConfigError>(m, "ConfigError", PyExc_ValueError);

  m.def(
      "read_pgm",
      [](const std::string& path) { return array_from_image(bpwm::read_pgm_file(path)); },
      py::arg("path"), "Load a binary PGM (P5, maxval 255) as a 2-D uint8 array.");
  m.def(
      "write_pgm",
      [](const std::string& path, const U8Array& img) {
        bpwm::write_pgm_file(path, image_from_array(img));
      },
      py::arg("path"), py::arg("image"), "Write a 2-D uint8 array as binary PGM.");

  m.def(
      "decompose",
      [](const U8Array& img) {
        const bpwm::PlaneStack stack = bpwm::decompose(image_from_array(img));
        py::list out;
        for (int l = 1; l <= 8; ++l) out.append(array_from_plane(stack.plane(l)));
        return out;
      },
      py::arg("image"),
      "All eight bit planes as 0/1 arrays, index 0 = plane 1 (MSB).");
  m.def(
      "recompose",
      [](py::sequence planes) {
        std::vector<bpwm::BitPlane> stack;
        int index = 1;
        for (auto e : planes) {
          stack.push_back(plane_from_array(e.cast<U8Array>(), index++));
        }
        return array_from_image(bpwm::recompose(bpwm::PlaneStack(std::move(stack))));
      },
      py::arg("planes"), "Rebuild the image from eight 0/1 plane arrays, MSB first.");
  m.def(
      "extract_plane",
      [](const U8Array& img, int plane) {
        return array_from_plane(bpwm::extract_plane(image_from_array(img), plane));
      },
      py::arg("image"), py::arg("plane"),
      "Plane `plane` (1 = MSB .. 8 = LSB) of the image as a 0/1 array.");
  m.def(
      "embed",
      [](const U8Array& cover, const U8Array& watermark, int image_plane,
         int watermark_plane) {
        return array_from_image(bpwm::embed(image_from_array(cover),
                                            image_from_array(watermark), image_plane,
                                            watermark_plane));
      },
      py::arg("cover"), py::arg("watermark"), py::arg("image_plane"),
      py::arg("watermark_plane"),
      "Replace cover plane `image_plane` with watermark plane `watermark_plane`.");
  m.def(
      "pseudorandom_plane",
      [](std::uint64_t seed, int width, int height) {
        return array_from_plane(bpwm::pseudorandom_plane(seed, width, height));
      },
      py::arg("seed"), py::arg("width"), py::arg("height"),
      "Deterministic Bernoulli(0.5) 0/1 array (the noise-pattern baseline).");

  m.def(
      "apply_attack",
      [](const U8Array& img, py::dict attack) {
        return array_from_image(
            bpwm::apply_attack(image_from_array(img), bpwm::attack_from_json(py_to_json(attack))));
      },
      py::arg("image"), py::arg("attack"),
      "Apply one attack described as a dict, e.g. {'kind': 'crop', 'fraction': 0.41}.");
  m.def(
      "default_battery",
      [](std::uint64_t seed) {
        py::list out;
        for (const auto& a : bpwm::default_battery(seed)) {
          out.append(json_to_py(bpwm::attack_to_json(a)));
        }
        return out;
      },
      py::arg("seed") = 42, "The ten-attack battery in canonical order, as dicts.");

  m.def(
      "crc",
      [](const U8Array& a, const U8Array& b) {
        return bpwm::crc(plane_from_array(a, 8), plane_from_array(b, 8));
      },
      py::arg("plane_a"), py::arg("plane_b"),
      "Correlation of two 0/1 plane arrays, in [0, 1].");
  m.def(
      "mse",
      [](const U8Array& a, const U8Array& b) {
        return bpwm::mse(image_from_array(a), image_from_array(b));
      },
      py::arg("image_a"), py::arg("image_b"));
  m.def(
      "psnr",
      [](const U8Array& a, const U8Array& b) {
        return bpwm::psnr(image_from_array(a), image_from_array(b));
      },
      py::arg("image_a"), py::arg("image_b"),
      "10*log10(255^2/MSE); float('inf') for identical inputs.");
  m.def(
      "weighted_crc",
      [](py::sequence crcs, py::object profile) {
        std::vector<double> values;
        for (auto e : crcs) values.push_back(e.cast<double>());
        return bpwm::weighted_crc(values, bpwm::profile_from_json(py_to_json(profile)));
      },
      py::arg("crcs"), py::arg("profile"),
      "Convex combination of ten per-attack CRCs; profile is a preset name "
      "or a {'name', 'weights'} dict.");
  m.def("presets", []() {
    py::list out;
    for (const auto& p : bpwm::WeightProfile::presets()) {
      out.append(json_to_py(bpwm::profile_to_json(p)));
    }
    return out;
  });

  m.def(
      "evaluate",
      [](const U8Array& cover, const U8Array& watermark, int image_plane,
         int watermark_plane, py::object attacks, py::object profiles,
         std::uint64_t seed) {
        return record_to_py(bpwm::evaluate_combination(
            image_from_array(cover), image_from_array(watermark),
            bpwm::PlaneCombination{image_plane, watermark_plane},
            attacks_from_py(attacks, seed), profiles_from_py(profiles)));
      },
      py::arg("cover"), py::arg("watermark"), py::arg("image_plane"),
      py::arg("watermark_plane"), py::arg("attacks") = py::none(),
      py::arg("profiles") = py::none(), py::arg("seed") = 42,
      "Embed, attack ten times, extract, and score one (l, k) combination.");
  m.def(
      "sweep",
      [](const U8Array& cover, const U8Array& watermark, py::object image_planes,
         py::object watermark_planes, py::object attacks, py::object profiles,
         std::uint64_t seed) {
        std::vector<int> ls{bpwm::kDefaultImagePlanes.begin(),
                            bpwm::kDefaultImagePlanes.end()};
        std::vector<int> ks{bpwm::kDefaultWatermarkPlanes.begin(),
                            bpwm::kDefaultWatermarkPlanes.end()};
        if (!image_planes.is_none()) ls = image_planes.cast<std::vector<int>>();
        if (!watermark_planes.is_none()) ks = watermark_planes.cast<std::vector<int>>();
        return report_to_py(bpwm::sweep(image_from_array(cover),
                                        image_from_array(watermark), ls, ks,
                                        attacks_from_py(attacks, seed),
                                        profiles_from_py(profiles), seed));
      },
      py::arg("cover"), py::arg("watermark"), py::arg("image_planes") = py::none(),
      py::arg("watermark_planes") = py::none(), py::arg("attacks") = py::none(),
      py::arg("profiles") = py::none(), py::arg("seed") = 42,
      "Evaluate the plane-pair cross product and select the optimum per profile.");
}
