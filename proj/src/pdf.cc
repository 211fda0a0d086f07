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

#include "viewscope/pdf.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "json.hpp"
#include "viewscope/errors.h"
#include "viewscope/json_util.h"

namespace viewscope {

using nlohmann::json;

void PdfConfig::Validate() const {
  if (bins_x < 1 || bins_y < 1 || bins_d < 1) {
    throw std::invalid_argument("pdf bin counts must be >= 1");
  }
  if (!(d_max > 0.0)) throw std::invalid_argument("pdf d_max must be > 0");
  if (!(depth_sigma_frac > 0.0 && depth_sigma_frac < 1.0)) {
    throw std::invalid_argument("depth_sigma_frac must be in (0, 1)");
  }
}

namespace {

int UnitBin(double v, int bins) {
  const int b = static_cast<int>(std::floor(v * bins));
  return std::clamp(b, 0, bins - 1);
}

int DepthBinFor(double d, double d_max, int bins) {
  if (bins == 1) return 0;
  if (!(d > 0.0)) return 0;
  if (d >= d_max) return bins - 1;
  return std::clamp(static_cast<int>(std::floor(d / d_max * bins)), 0,
                    bins - 1);
}

double NormalCdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

}  // namespace

std::vector<double> TruncatedGaussianBinMasses(double mu, double sigma,
                                               int bins) {
  std::vector<double> mass(bins);
  if (bins == 1) {
    mass[0] = 1.0;
    return mass;
  }
  double total = 0.0;
  double lo = NormalCdf((0.0 - mu) / sigma);
  for (int b = 0; b < bins; ++b) {
    const double hi = NormalCdf((b + 1.0 - mu) / sigma);
    mass[b] = hi - lo;
    total += mass[b];
    lo = hi;
  }
  for (double& m : mass) m /= total;
  return mass;
}

PdfAccumulator::PdfAccumulator(const PdfConfig& config, int num_categories)
    : config_(config), num_categories_(num_categories) {
  config_.Validate();
  if (num_categories < 1) {
    throw std::invalid_argument("need at least one category");
  }
  cells_per_category_ = static_cast<size_t>(config_.bins_x) * config_.bins_y *
                        config_.depth_bins();
  raw_.assign(cells_per_category_ * num_categories_, 0.0);
  observations_.assign(num_categories_, 0);
}

void PdfAccumulator::AddImage(const SemanticDepthImage& image) {
  const int bd = config_.depth_bins();
  const bool gaussian = config_.single_image_mode && bd > 1;
  const double sigma = config_.depth_sigma_frac * bd;
  for (int y = 0; y < image.height; ++y) {
    const int yb = UnitBin(static_cast<double>(y) / image.height,
                           config_.bins_y);
    for (int x = 0; x < image.width; ++x) {
      const size_t idx = image.Index(x, y);
      const int c = image.category[idx];
      if (c == kBackground || c >= num_categories_) continue;
      const int xb = UnitBin(static_cast<double>(x) / image.width,
                             config_.bins_x);
      const size_t base = c * cells_per_category_ +
                          (static_cast<size_t>(xb) * config_.bins_y + yb) * bd;
      ++observations_[c];
      const double d = image.depth[idx];
      if (!gaussian) {
        raw_[base + DepthBinFor(d, config_.d_max, bd)] += 1.0;
        continue;
      }
      const double mu =
          std::clamp(std::isfinite(d) ? d / config_.d_max * bd : bd, 0.0,
                     static_cast<double>(bd));
      const std::vector<double> mass = TruncatedGaussianBinMasses(mu, sigma, bd);
      for (int db = 0; db < bd; ++db) raw_[base + db] += mass[db];
    }
  }
}

void PdfAccumulator::Merge(const PdfAccumulator& other) {
  if (!(other.config_ == config_) || other.num_categories_ != num_categories_) {
    throw std::invalid_argument("cannot merge accumulators with different "
                                "configurations");
  }
  for (size_t i = 0; i < raw_.size(); ++i) raw_[i] += other.raw_[i];
  for (int c = 0; c < num_categories_; ++c) {
    observations_[c] += other.observations_[c];
  }
}

std::span<const double> PdfAccumulator::RawHistogram(CategoryId c) const {
  return {raw_.data() + c * cells_per_category_, cells_per_category_};
}

double PdfAccumulator::RawTotal(CategoryId c) const {
  const auto h = RawHistogram(c);
  return std::accumulate(h.begin(), h.end(), 0.0);
}

CategoryPdfSet::CategoryPdfSet(const PdfAccumulator& acc)
    : config_(acc.config_),
      num_categories_(acc.num_categories_),
      values_(acc.raw_),
      observations_(acc.observations_) {
  const size_t cells = acc.cells_per_category_;
  for (int c = 0; c < num_categories_; ++c) {
    double* h = values_.data() + c * cells;
    const double total = std::accumulate(h, h + cells, 0.0);
    if (observations_[c] == 0 || !(total > 0.0)) {
      std::fill(h, h + cells, 0.0);
      observations_[c] = 0;
      continue;
    }
    for (size_t i = 0; i < cells; ++i) h[i] /= total;
  }
  BuildMarginals();
}

void CategoryPdfSet::BuildMarginals() {
  const int bd = config_.depth_bins();
  marginals_.assign(static_cast<size_t>(num_categories_) * bd, 0.0);
  for (int c = 0; c < num_categories_; ++c) {
    for (int xb = 0; xb < config_.bins_x; ++xb) {
      for (int yb = 0; yb < config_.bins_y; ++yb) {
        for (int db = 0; db < bd; ++db) {
          marginals_[static_cast<size_t>(c) * bd + db] +=
              values_[CellIndex(c, xb, yb, db)];
        }
      }
    }
  }
}

int CategoryPdfSet::XBin(double x) const { return UnitBin(x, config_.bins_x); }
int CategoryPdfSet::YBin(double y) const { return UnitBin(y, config_.bins_y); }
int CategoryPdfSet::DepthBin(double d) const {
  return DepthBinFor(d, config_.d_max, config_.depth_bins());
}

std::span<const double> CategoryPdfSet::Histogram(CategoryId c) const {
  const size_t cells = static_cast<size_t>(config_.bins_x) * config_.bins_y *
                       config_.depth_bins();
  return {values_.data() + c * cells, cells};
}

CategoryPdfSet EstimatePdfs(const std::vector<SemanticDepthImage>& images,
                            const PdfConfig& config, int num_categories) {
  PdfAccumulator acc(config, num_categories);
  for (const SemanticDepthImage& img : images) acc.AddImage(img);
  return CategoryPdfSet(acc);
}

namespace {

constexpr const char* kPdfFormat = "viewscope-pdf";
constexpr int kPdfVersion = 1;

json ConfigToJson(const PdfConfig& c) {
  return json{{"bins_x", c.bins_x},
              {"bins_y", c.bins_y},
              {"bins_d", c.bins_d},
              {"d_max", c.d_max},
              {"mode", PixelModeName(c.mode)},
              {"single_image_mode", c.single_image_mode},
              {"depth_sigma_frac", c.depth_sigma_frac}};
}

PdfConfig ConfigFromJson(const json& j) {
  PdfConfig c;
  c.bins_x = JsonInt(JsonField(j, "bins_x", "$.config"), "$.config.bins_x");
  c.bins_y = JsonInt(JsonField(j, "bins_y", "$.config"), "$.config.bins_y");
  c.bins_d = JsonInt(JsonField(j, "bins_d", "$.config"), "$.config.bins_d");
  c.d_max = JsonNumber(JsonField(j, "d_max", "$.config"), "$.config.d_max");
  c.mode = ParsePixelMode(
      JsonString(JsonField(j, "mode", "$.config"), "$.config.mode"));
  const json& sim = JsonField(j, "single_image_mode", "$.config");
  if (!sim.is_boolean()) {
    throw ParseError("$.config.single_image_mode: expected a boolean");
  }
  c.single_image_mode = sim.get<bool>();
  c.depth_sigma_frac = JsonNumber(JsonField(j, "depth_sigma_frac", "$.config"),
                                  "$.config.depth_sigma_frac");
  return c;
}

}  // namespace

std::string CategoryPdfSet::Serialize(const std::string& config_hash) const {
  json doc{{"format", kPdfFormat},
           {"version", kPdfVersion},
           {"config", ConfigToJson(config_)},
           {"num_categories", num_categories_},
           {"observations", observations_}};
  if (!config_hash.empty()) doc["config_hash"] = config_hash;
  json hists = json::array();
  for (int c = 0; c < num_categories_; ++c) {
    if (IsEmpty(c)) {
      hists.push_back(nullptr);
    } else {
      const auto h = Histogram(c);
      hists.push_back(std::vector<double>(h.begin(), h.end()));
    }
  }
  doc["histograms"] = std::move(hists);
  return doc.dump() + "\n";
}

CategoryPdfSet CategoryPdfSet::Deserialize(const std::string& text,
                                           const std::string& source) {
  const json doc = ParseJsonText(text, source);
  try {
    if (JsonString(JsonField(doc, "format", "$"), "$.format") != kPdfFormat) {
      throw ParseError("$.format: not a pdf file");
    }
    const int version = JsonInt(JsonField(doc, "version", "$"), "$.version");
    if (version != kPdfVersion) {
      throw ParseError("$.version: unsupported version " +
                       std::to_string(version));
    }
    CategoryPdfSet out;
    out.config_ = ConfigFromJson(JsonField(doc, "config", "$"));
    out.config_.Validate();
    out.num_categories_ =
        JsonInt(JsonField(doc, "num_categories", "$"), "$.num_categories");
    const json& obs = JsonArray(JsonField(doc, "observations", "$"),
                                "$.observations");
    const json& hists = JsonArray(JsonField(doc, "histograms", "$"),
                                  "$.histograms");
    if (static_cast<int>(obs.size()) != out.num_categories_ ||
        static_cast<int>(hists.size()) != out.num_categories_) {
      throw ParseError("$: array lengths disagree with num_categories");
    }
    const size_t cells = static_cast<size_t>(out.config_.bins_x) *
                         out.config_.bins_y * out.config_.depth_bins();
    out.values_.assign(cells * out.num_categories_, 0.0);
    for (int c = 0; c < out.num_categories_; ++c) {
      out.observations_.push_back(obs[c].get<std::int64_t>());
      if (hists[c].is_null()) {
        out.observations_.back() = 0;
        continue;
      }
      const std::string hpath = "$.histograms[" + std::to_string(c) + "]";
      const json& h = JsonArray(hists[c], hpath);
      if (h.size() != cells) throw ParseError(hpath + ": wrong length");
      for (size_t i = 0; i < cells; ++i) {
        out.values_[c * cells + i] = JsonNumber(h[i], hpath);
      }
    }
    out.BuildMarginals();
    return out;
  } catch (const ParseError& e) {
    throw ParseError(source + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(source + ": " + e.what());
  }
}

void SavePdfSet(const std::filesystem::path& path, const CategoryPdfSet& pdfs,
                const std::string& config_hash) {
  WriteTextFile(path, pdfs.Serialize(config_hash));
}

CategoryPdfSet LoadPdfSet(const std::filesystem::path& path) {
  return CategoryPdfSet::Deserialize(ReadTextFile(path), path.string());
}

}  // namespace viewscope
