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

// View set selection. The objective credits, for every category c, the h_c
// largest scores W_{v,c} among the selected views:
//
//   F(S) = sum_c  (sum of the min(h_c, |S|) largest W_{v,c}, v in S)
//
// F is nonnegative, monotone and submodular, so greedy selection under
// |S| <= k is within a factor 1/2 of optimal. Per-category fixed-size
// minheaps hold the currently credited values; the marginal gain of a view is
// sum_c max(W_{v,c} - min(heap_c), 0).

#ifndef VIEWSCOPE_SELECT_H_
#define VIEWSCOPE_SELECT_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "viewscope/candidate.h"

namespace viewscope {

struct SelectionConfig {
  int k = 1;
  std::vector<int> h;  // per category, all >= 1

  // h_c = max(1, floor(k / n)) for every category.
  static SelectionConfig Default(int k, int num_categories);
  // Throws std::invalid_argument.
  void Validate() const;
};

// Sum of the top-h_c values of every coordinate across `vectors`.
double ObjectiveValue(const std::vector<std::span<const double>>& vectors,
                      std::span<const int> h);

class SelectionState {
 public:
  explicit SelectionState(std::span<const int> h);

  double Gain(std::span<const double> scores) const;
  // Adds a view; returns its gain.
  double Commit(std::int64_t id, std::span<const double> scores);

  double objective() const { return objective_; }
  const std::vector<std::int64_t>& selected() const { return selected_; }
  // Smallest credited value for category c.
  double HeapMin(int c) const { return heaps_[c].front(); }
  // Sum of all heap contents, recomputed.
  double HeapSum() const;
  const std::vector<double>& Heap(int c) const { return heaps_[c]; }

 private:
  std::vector<std::vector<double>> heaps_;  // std::greater heaps
  std::vector<std::int64_t> selected_;
  double objective_ = 0.0;
};

struct Pick {
  std::int64_t id;
  double gain;
};

struct ViewSet {
  std::vector<Pick> picks;
  double objective = 0.0;
  SelectionConfig config;
  std::int64_t gain_evaluations = 0;

  std::vector<std::int64_t> Ids() const;
};

// Naive greedy: every iteration evaluates every remaining view and takes the
// largest gain (ties to the smaller id); stops early when the best gain is 0.
ViewSet GreedySelect(std::span<const Candidate> candidates,
                     const SelectionConfig& cfg);

// Lazy greedy with stale upper bounds in a priority queue. Produces exactly
// the output of GreedySelect.
ViewSet LazyGreedySelect(std::span<const Candidate> candidates,
                         const SelectionConfig& cfg);

struct BruteForceResult {
  std::vector<std::int64_t> ids;  // ascending
  double value = 0.0;
};

// Exhaustive optimum over subsets of size min(k, |candidates|); the
// lexicographically smallest optimal id set wins ties. Throws AlgorithmError
// when the subset count exceeds `max_subsets`.
BruteForceResult BruteForceSelect(std::span<const Candidate> candidates,
                                  const SelectionConfig& cfg,
                                  std::int64_t max_subsets = 1000000);

// Manifest: {format, config:{k,h}, objective, picks:[{id, gain_at_pick}],
// config_hash}.
void WriteSelectionManifest(const std::filesystem::path& path,
                            const ViewSet& set,
                            const std::string& config_hash);
ViewSet ReadSelectionManifest(const std::filesystem::path& path);

}  // namespace viewscope

#endif  // VIEWSCOPE_SELECT_H_
