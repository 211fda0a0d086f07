// Copyright 2026 The Viewscope Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "viewscope/run_config.h"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "viewscope/errors.h"
#include "viewscope/json_util.h"

namespace viewscope {

namespace {

std::string Trim(const std::string& s) {
  const size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

long long ToInt(const std::string& s) {
  const std::string t = Trim(s);
  char* end = nullptr;
  errno = 0;
  const long long v = std::strtoll(t.c_str(), &end, 10);
  if (t.empty() || *end != '\0' || errno != 0) {
    throw std::invalid_argument("expected an integer, got '" + s + "'");
  }
  return v;
}

std::uint64_t ToUint(const std::string& s) {
  const std::string t = Trim(s);
  char* end = nullptr;
  errno = 0;
  const unsigned long long v = std::strtoull(t.c_str(), &end, 10);
  if (t.empty() || t[0] == '-' || *end != '\0' || errno != 0) {
    throw std::invalid_argument("expected an unsigned integer, got '" + s + "'");
  }
  return v;
}

double ToDouble(const std::string& s) {
  const std::string t = Trim(s);
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (t.empty() || *end != '\0') {
    throw std::invalid_argument("expected a number, got '" + s + "'");
  }
  return v;
}

bool ToBool(const std::string& s) {
  const std::string t = Trim(s);
  if (t == "true" || t == "1" || t == "yes" || t == "on") return true;
  if (t == "false" || t == "0" || t == "no" || t == "off") return false;
  throw std::invalid_argument("expected true or false, got '" + s + "'");
}

std::vector<std::string> SplitList(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!Trim(item).empty()) out.push_back(Trim(item));
  }
  return out;
}

std::string Num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string Bool(bool v) { return v ? "true" : "false"; }

struct Field {
  const char* section;
  const char* key;
  std::function<void(RunConfig&, const std::string&)> set;
  std::function<std::string(const RunConfig&)> get;
  bool run_local = false;  // excluded from the hash
};

#define VS_INT(sec, key, member)                                             \
  Field{sec, key,                                                            \
        [](RunConfig& c, const std::string& v) {                             \
          c.member = static_cast<int>(ToInt(v));                             \
        },                                                                   \
        [](const RunConfig& c) { return std::to_string(c.member); }}
#define VS_DOUBLE(sec, key, member)                                          \
  Field{sec, key,                                                            \
        [](RunConfig& c, const std::string& v) { c.member = ToDouble(v); },  \
        [](const RunConfig& c) { return Num(c.member); }}
#define VS_BOOL(sec, key, member)                                            \
  Field{sec, key,                                                            \
        [](RunConfig& c, const std::string& v) { c.member = ToBool(v); },    \
        [](const RunConfig& c) { return Bool(c.member); }}
#define VS_DEG(sec, key, member)                                             \
  Field{sec, key,                                                            \
        [](RunConfig& c, const std::string& v) {                             \
          c.member = DegToRad(ToDouble(v));                                  \
        },                                                                   \
        [](const RunConfig& c) { return Num(RadToDeg(c.member)); }}

const std::vector<Field>& Fields() {
  static const std::vector<Field> fields = {
      Field{"run", "output_dir",
            [](RunConfig& c, const std::string& v) { c.output_dir = Trim(v); },
            [](const RunConfig& c) { return c.output_dir.string(); }, true},
      Field{"run", "seed",
            [](RunConfig& c, const std::string& v) { c.seed = ToUint(v); },
            [](const RunConfig& c) { return std::to_string(c.seed); }},
      Field{"run", "workers",
            [](RunConfig& c, const std::string& v) {
              c.workers = static_cast<int>(ToInt(v));
            },
            [](const RunConfig& c) { return std::to_string(c.workers); }, true},
      Field{"run", "preset",
            [](RunConfig& c, const std::string& v) { c.preset = Trim(v); },
            [](const RunConfig& c) { return c.preset; }},
      Field{"paths", "scene",
            [](RunConfig& c, const std::string& v) { c.scene = Trim(v); },
            [](const RunConfig& c) { return c.scene.string(); }},
      Field{"paths", "examples",
            [](RunConfig& c, const std::string& v) { c.examples = Trim(v); },
            [](const RunConfig& c) { return c.examples.string(); }},
      Field{"paths", "weights",
            [](RunConfig& c, const std::string& v) { c.weights = Trim(v); },
            [](const RunConfig& c) { return c.weights; }},
      Field{"suite", "preset",
            [](RunConfig& c, const std::string& v) { c.suite.preset = Trim(v); },
            [](const RunConfig& c) { return c.suite.preset; }},
      Field{"suite", "seed",
            [](RunConfig& c, const std::string& v) { c.suite.seed = ToUint(v); },
            [](const RunConfig& c) { return std::to_string(c.suite.seed); }},
      VS_INT("suite", "example_images", suite.example_images),
      VS_INT("suite", "example_width", suite.example_width),
      VS_INT("suite", "example_height", suite.example_height),
      VS_INT("pdf", "bins_x", pdf.bins_x),
      VS_INT("pdf", "bins_y", pdf.bins_y),
      VS_INT("pdf", "bins_d", pdf.bins_d),
      VS_DOUBLE("pdf", "d_max", pdf.d_max),
      Field{"pdf", "mode",
            [](RunConfig& c, const std::string& v) {
              c.pdf.mode = ParsePixelMode(Trim(v));
            },
            [](const RunConfig& c) { return std::string(PixelModeName(c.pdf.mode)); }},
      VS_BOOL("pdf", "single_image_mode", pdf.single_image_mode),
      VS_DOUBLE("pdf", "depth_sigma_frac", pdf.depth_sigma_frac),
      VS_INT("generate", "target_voxels", gen.target_voxels),
      VS_INT("generate", "rays_per_voxel", gen.rays_per_voxel),
      VS_INT("generate", "candidates_per_room", gen.candidates_per_room),
      VS_INT("generate", "keep_per_room", gen.keep_per_room),
      VS_BOOL("generate", "uniform_voxel_weights", gen.uniform_voxel_weights),
      VS_BOOL("generate", "divide_by_observation_frequency",
              gen.divide_by_observation_frequency),
      Field{"generate", "hit_count_scope",
            [](RunConfig& c, const std::string& v) {
              const std::string t = Trim(v);
              if (t == "voxel") {
                c.gen.hit_count_scope = HitCountScope::kVoxel;
              } else if (t == "room") {
                c.gen.hit_count_scope = HitCountScope::kRoom;
              } else {
                throw std::invalid_argument("expected voxel or room, got '" + v + "'");
              }
            },
            [](const RunConfig& c) {
              return std::string(c.gen.hit_count_scope == HitCountScope::kVoxel
                                     ? "voxel"
                                     : "room");
            }},
      VS_INT("generate", "score_width", gen.score_width),
      VS_INT("generate", "score_height", gen.score_height),
      VS_DEG("generate", "hfov_deg", gen.hfov),
      VS_DOUBLE("generate", "aspect", gen.aspect),
      VS_DOUBLE("generate", "tilt_mean_deg", tilt_mean_deg),
      VS_DOUBLE("generate", "tilt_std_deg", tilt_std_deg),
      VS_DOUBLE("generate", "roll_std_deg", roll_std_deg),
      VS_INT("generate", "max_eye_retries", gen.max_eye_retries),
      VS_INT("select", "k", select_k),
      Field{"select", "h",
            [](RunConfig& c, const std::string& v) {
              c.select_h.clear();
              for (const std::string& s : SplitList(v)) {
                c.select_h.push_back(static_cast<int>(ToInt(s)));
              }
            },
            [](const RunConfig& c) {
              std::string out;
              for (size_t i = 0; i < c.select_h.size(); ++i) {
                out += (i ? "," : "") + std::to_string(c.select_h[i]);
              }
              return out;
            }},
      VS_BOOL("select", "lazy", lazy),
      VS_DOUBLE("baseline", "eye_height", baseline.eye_height),
      VS_DOUBLE("baseline", "heur_min_pixels", baseline.heur_min_pixels),
      VS_DEG("baseline", "heur_pitch_deg", baseline.heur_pitch),
      VS_INT("baseline", "heur_directions", baseline.heur_directions),
      VS_DOUBLE("baseline", "grid_cell", baseline.grid_cell),
      VS_DOUBLE("baseline", "clearance", baseline.clearance),
      Field{"baseline", "cat_ring_radii",
            [](RunConfig& c, const std::string& v) {
              c.baseline.cat_ring_radii.clear();
              for (const std::string& s : SplitList(v)) {
                c.baseline.cat_ring_radii.push_back(ToDouble(s));
              }
            },
            [](const RunConfig& c) {
              std::string out;
              for (size_t i = 0; i < c.baseline.cat_ring_radii.size(); ++i) {
                out += (i ? "," : "") + Num(c.baseline.cat_ring_radii[i]);
              }
              return out;
            }},
      VS_INT("baseline", "cat_ring_angles", baseline.cat_ring_angles),
      VS_INT("baseline", "views_total", baseline.views_total),
      VS_INT("baseline", "rejection_budget", baseline.rejection_budget),
      VS_INT("emd", "bins", emd.bins),
      VS_INT("emd", "threshold", emd.threshold),
      VS_DOUBLE("emd", "d_max", emd.d_max),
      VS_INT("emd", "eval_width", eval_width),
      VS_INT("emd", "eval_height", eval_height),
      VS_INT("export", "width", export_width),
      VS_INT("export", "height", export_height),
  };
  return fields;
}

#undef VS_INT
#undef VS_DOUBLE
#undef VS_BOOL
#undef VS_DEG

const Field* FindField(const std::string& section, const std::string& key) {
  for (const Field& f : Fields()) {
    if (section == f.section && key == f.key) return &f;
  }
  return nullptr;
}

}  // namespace

void RunConfig::Propagate() {
  gen.seed = seed;
  baseline.seed = seed;
  baseline.hfov = gen.hfov;
  baseline.aspect = gen.aspect;
  baseline.score_width = gen.score_width;
  baseline.score_height = gen.score_height;
}

void RunConfig::ApplySingleImagePreset() {
  preset = "single_image";
  gen.candidates_per_room = 3500;
  gen.divide_by_observation_frequency = false;
  weights = "uniform";
  pdf.single_image_mode = true;
}

void RunConfig::Validate() const {
  if (workers < 1) throw std::invalid_argument("run.workers must be >= 1");
  if (preset != "default" && preset != "single_image") {
    throw std::invalid_argument("run.preset must be default or single_image");
  }
  if (weights.empty()) throw std::invalid_argument("paths.weights is empty");
  suite.Validate();
  pdf.Validate();
  gen.Validate();
  if (!(tilt_std_deg >= 0.0) || !(roll_std_deg >= 0.0)) {
    throw std::invalid_argument("tilt and roll deviations must be >= 0");
  }
  if (select_k < 1) throw std::invalid_argument("select.k must be >= 1");
  for (const int h : select_h) {
    if (h < 1) throw std::invalid_argument("select.h entries must be >= 1");
  }
  baseline.Validate();
  emd.Validate();
  if (eval_width < 1 || eval_height < 1 || export_width < 1 ||
      export_height < 1) {
    throw std::invalid_argument("image resolutions must be positive");
  }
}

TiltPrior RunConfig::Tilt() const {
  return TiltPrior::Gaussian(DegToRad(tilt_mean_deg), DegToRad(tilt_std_deg),
                             0.0, DegToRad(roll_std_deg));
}

std::string RunConfig::Echo() const {
  std::string out;
  for (const Field& f : Fields()) {
    out += std::string(f.section) + "." + f.key + " = " + f.get(*this) + "\n";
  }
  return out;
}

std::string RunConfig::Hash() const {
  std::string text;
  for (const Field& f : Fields()) {
    if (f.run_local) continue;
    text += std::string(f.section) + "." + f.key + "=" + f.get(*this) + "\n";
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(Fnv1a64(text)));
  return buf;
}

RunConfig ParseRunConfig(const std::string& text, const std::string& source) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    std::istringstream in(text);
    pt::ini_parser::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ParseError(source + ":" + std::to_string(e.line()) + ": " + e.message());
  }
  for (const auto& [name, section] : tree) {
    if (section.empty() && !section.data().empty()) {
      throw ParseError(source + ": key '" + name + "' outside of any section");
    }
    for (const auto& [key, value] : section) {
      if (!FindField(name, key)) {
        throw ParseError(source + ": unknown setting [" + name + "] " + key);
      }
    }
  }
  RunConfig cfg;
  if (const auto preset = tree.get_optional<std::string>("run.preset")) {
    const std::string name = Trim(*preset);
    if (name == "single_image") {
      cfg.ApplySingleImagePreset();
    } else if (name != "default") {
      throw ParseError(source + ": [run] preset: unknown preset '" + name +
                       "' (expected default or single_image)");
    }
  }
  for (const auto& [name, section] : tree) {
    for (const auto& [key, value] : section) {
      try {
        FindField(name, key)->set(cfg, value.data());
      } catch (const std::invalid_argument& e) {
        throw ParseError(source + ": [" + name + "] " + key + ": " + e.what());
      }
    }
  }
  cfg.Propagate();
  return cfg;
}

RunConfig LoadRunConfig(const std::filesystem::path& path) {
  return ParseRunConfig(ReadTextFile(path), path.string());
}

}  // namespace viewscope
