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

// Image-set comparison: per-category 1D occurrence histograms along x, y and
// depth, compared with an earth mover's distance whose ground distance is
// thresholded, d(i, j) = min(|i - j|, t). Costs are divided by t so every
// entry lies in [0, 1].

#ifndef VIEWSCOPE_EMD_H_
#define VIEWSCOPE_EMD_H_

#include <array>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "viewscope/categories.h"
#include "viewscope/render.h"

namespace viewscope {

enum class Axis { kX = 0, kY = 1, kDepth = 2 };
inline constexpr std::array<Axis, 3> kAllAxes = {Axis::kX, Axis::kY,
                                                 Axis::kDepth};
const char* AxisName(Axis axis);

struct AxisHistogram {
  CategoryId category = 0;
  Axis axis = Axis::kX;
  std::vector<double> bins;  // l1-normalized, or all zero when empty
  double total = 0.0;        // pixel count before normalization

  bool empty() const { return total == 0.0; }
};

// One histogram per category id in [0, num_categories). Pixels without a
// finite positive depth are left out of the depth axis.
std::vector<AxisHistogram> AxisHistograms(
    const std::vector<SemanticDepthImage>& images, Axis axis, int bins,
    double d_max, int num_categories);

// Exact transport cost between equal-mass histograms under
// d(i, j) = min(|i - j|, t). Throws std::invalid_argument on size or mass
// mismatch (tolerance 1e-9) and for t < 1.
double EmdThresholded(std::span<const double> h1, std::span<const double> h2,
                      int t);

// Reference solver: dense transportation LP with an arbitrary ground matrix
// (ground[i][j]), solved by a two-phase simplex. B <= 64.
double TransportationOracle(std::span<const double> h1,
                            std::span<const double> h2,
                            const std::vector<std::vector<double>>& ground);

// Classic 1D EMD: sum over bins of |CDF1 - CDF2|.
double EmdCdf(std::span<const double> h1, std::span<const double> h2);

struct EmdConfig {
  int bins = 32;
  int threshold = 3;
  double d_max = 10.0;

  void Validate() const;  // throws std::invalid_argument
};

struct EmdEntry {
  CategoryId category;
  Axis axis;
  double value;     // normalized to [0, 1]
  bool one_sided;   // category present in only one of the sets
};

struct EmdReport {
  EmdConfig config;
  std::vector<std::string> category_names;
  std::vector<EmdEntry> entries;       // category-major, axis-minor
  std::vector<CategoryId> excluded;    // empty in both sets
  std::array<double, 3> axis_means{};  // over included categories
  double grand_mean = 0.0;

  double Value(CategoryId category, Axis axis) const;  // NaN when excluded
  std::string ToJson() const;
  std::string ToCsv() const;
  // Plain-text per-axis table for figures.
  std::string ToTable() const;
};

EmdReport EvaluateSets(const std::vector<SemanticDepthImage>& generated,
                       const std::vector<SemanticDepthImage>& examples,
                       const CategoryTable& categories, const EmdConfig& cfg);

void WriteEmdReport(const std::filesystem::path& json_path,
                    const std::filesystem::path& csv_path,
                    const EmdReport& report);

}  // namespace viewscope

#endif  // VIEWSCOPE_EMD_H_
