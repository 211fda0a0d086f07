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

// Per-category spatial likelihood histograms f_c(x, y, d) estimated from
// labeled example images. x and y are pixel positions normalized by image
// size into [0, 1); d is depth in meters, binned linearly over [0, d_max]
// with overflow clamped into the last bin.

#ifndef VIEWSCOPE_PDF_H_
#define VIEWSCOPE_PDF_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "viewscope/example_set.h"
#include "viewscope/render.h"

namespace viewscope {

struct PdfConfig {
  int bins_x = 16;
  int bins_y = 16;
  int bins_d = 16;
  double d_max = 10.0;
  PixelMode mode = PixelMode::kRgbd;
  // Deposit a truncated Gaussian along depth instead of a point per pixel.
  bool single_image_mode = false;
  // Gaussian sigma as a fraction of the depth-axis bin count.
  double depth_sigma_frac = 0.1;

  // Depth bins actually used: 1 in RGB mode.
  int depth_bins() const { return mode == PixelMode::kRgb2d ? 1 : bins_d; }
  // Throws std::invalid_argument.
  void Validate() const;
  friend bool operator==(const PdfConfig&, const PdfConfig&) = default;
};

// Raw (unnormalized) histogram accumulator. Partial accumulators over
// disjoint image subsets merge associatively.
class PdfAccumulator {
 public:
  PdfAccumulator(const PdfConfig& config, int num_categories);

  void AddImage(const SemanticDepthImage& image);
  void Merge(const PdfAccumulator& other);

  const PdfConfig& config() const { return config_; }
  int num_categories() const { return num_categories_; }
  double RawTotal(CategoryId c) const;
  std::int64_t Observations(CategoryId c) const { return observations_[c]; }
  std::span<const double> RawHistogram(CategoryId c) const;

 private:
  friend class CategoryPdfSet;

  PdfConfig config_;
  int num_categories_;
  size_t cells_per_category_;
  std::vector<double> raw_;
  std::vector<std::int64_t> observations_;
};

class CategoryPdfSet {
 public:
  CategoryPdfSet() = default;
  // l1-normalizes every nonempty category of the accumulator.
  explicit CategoryPdfSet(const PdfAccumulator& acc);

  const PdfConfig& config() const { return config_; }
  int num_categories() const { return num_categories_; }
  bool IsEmpty(CategoryId c) const { return observations_[c] == 0; }
  std::int64_t Observations(CategoryId c) const { return observations_[c]; }

  int XBin(double x) const;
  int YBin(double y) const;
  int DepthBin(double d) const;

  // f_c at the bin containing (x, y, d). Zero for empty categories.
  double Likelihood(CategoryId c, double x, double y, double d) const {
    return values_[CellIndex(c, XBin(x), YBin(y), DepthBin(d))];
  }
  double BinValue(CategoryId c, int xb, int yb, int db) const {
    return values_[CellIndex(c, xb, yb, db)];
  }
  // Sum of f_c over all (x, y) bins of the depth slice containing d.
  double DepthMarginal(CategoryId c, double d) const {
    return marginals_[static_cast<size_t>(c) * config_.depth_bins() +
                      DepthBin(d)];
  }
  double DepthMarginalBin(CategoryId c, int db) const {
    return marginals_[static_cast<size_t>(c) * config_.depth_bins() + db];
  }
  std::span<const double> Histogram(CategoryId c) const;

  size_t CellIndex(CategoryId c, int xb, int yb, int db) const {
    return ((static_cast<size_t>(c) * config_.bins_x + xb) * config_.bins_y +
            yb) * config_.depth_bins() + db;
  }

  friend bool operator==(const CategoryPdfSet& a, const CategoryPdfSet& b) {
    return a.config_ == b.config_ && a.num_categories_ == b.num_categories_ &&
           a.values_ == b.values_ && a.observations_ == b.observations_;
  }

  // JSON dump {format, version, config, num_categories, observations,
  // histograms: [flat array | null]}; doubles round-trip exactly.
  std::string Serialize(const std::string& config_hash = "") const;
  static CategoryPdfSet Deserialize(const std::string& text,
                                    const std::string& source);

 private:
  void BuildMarginals();

  PdfConfig config_;
  int num_categories_ = 0;
  std::vector<double> values_;
  std::vector<std::int64_t> observations_;
  std::vector<double> marginals_;
};

CategoryPdfSet EstimatePdfs(const std::vector<SemanticDepthImage>& images,
                            const PdfConfig& config, int num_categories);

inline CategoryPdfSet EstimatePdfs(const ExampleSet& examples,
                                   const PdfConfig& config,
                                   int num_categories) {
  return EstimatePdfs(examples.images, config, num_categories);
}

void SavePdfSet(const std::filesystem::path& path, const CategoryPdfSet& pdfs,
                const std::string& config_hash = "");
CategoryPdfSet LoadPdfSet(const std::filesystem::path& path);

// Fraction of a unit-mass Gaussian (mean `mu`, std `sigma`, in bin units)
// that falls in each of `bins` unit bins, truncated to [0, bins] and
// renormalized.
std::vector<double> TruncatedGaussianBinMasses(double mu, double sigma,
                                               int bins);

}  // namespace viewscope

#endif  // VIEWSCOPE_PDF_H_
