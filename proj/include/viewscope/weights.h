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

#ifndef VIEWSCOPE_WEIGHTS_H_
#define VIEWSCOPE_WEIGHTS_H_

#include <filesystem>
#include <span>
#include <vector>

#include "viewscope/categories.h"

namespace viewscope {

// Per-category multipliers w_c >= 0 applied to candidate scores and voxel
// weights.
struct CategoryWeights {
  std::vector<double> w;

  static CategoryWeights Uniform(int num_categories) {
    return {std::vector<double>(num_categories, 1.0)};
  }
  int size() const { return static_cast<int>(w.size()); }
  double operator[](CategoryId c) const { return w[c]; }
  // Throws ValidationError on negative or non-finite entries or a length
  // that differs from `num_categories`.
  void Validate(int num_categories) const;
};

// w_c = example_freq_c / scene_freq_c; zero where the scene never contains
// the category; structural categories of `table` forced to 1.
CategoryWeights ComputeRebalanceWeights(std::span<const double> example_freqs,
                                        std::span<const double> scene_freqs,
                                        const CategoryTable& table);

// Weight file: {"categories": [names...], "weights": [number | null, ...]}.
// null marks a category with no scene counterpart and loads as 0. Names must
// match `table` in order.
CategoryWeights LoadCategoryWeights(const std::filesystem::path& path,
                                    const CategoryTable& table);
void SaveCategoryWeights(const std::filesystem::path& path,
                         const CategoryWeights& weights,
                         const CategoryTable& table);

}  // namespace viewscope

#endif  // VIEWSCOPE_WEIGHTS_H_
