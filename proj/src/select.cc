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

#include "viewscope/select.h"

#include <algorithm>
#include <functional>
#include <queue>
#include <stdexcept>

#include "json.hpp"
#include "viewscope/errors.h"
#include "viewscope/json_util.h"

namespace viewscope {

using nlohmann::json;

SelectionConfig SelectionConfig::Default(int k, int num_categories) {
  SelectionConfig cfg;
  cfg.k = k;
  cfg.h.assign(num_categories, std::max(1, k / std::max(num_categories, 1)));
  return cfg;
}

void SelectionConfig::Validate() const {
  if (k < 1) throw std::invalid_argument("selection k must be >= 1");
  if (h.empty()) throw std::invalid_argument("selection h must be nonempty");
  for (const int v : h) {
    if (v < 1) throw std::invalid_argument("every h_c must be >= 1");
  }
}

double ObjectiveValue(const std::vector<std::span<const double>>& vectors,
                      std::span<const int> h) {
  double total = 0.0;
  std::vector<double> column;
  for (size_t c = 0; c < h.size(); ++c) {
    column.clear();
    for (const auto& v : vectors) column.push_back(v[c]);
    const size_t take = std::min(column.size(), static_cast<size_t>(h[c]));
    std::partial_sort(column.begin(), column.begin() + take, column.end(),
                      std::greater<>());
    for (size_t i = 0; i < take; ++i) total += column[i];
  }
  return total;
}

SelectionState::SelectionState(std::span<const int> h) {
  heaps_.reserve(h.size());
  // All-zero heaps are valid heaps as they stand.
  for (const int size : h) heaps_.emplace_back(size, 0.0);
}

double SelectionState::Gain(std::span<const double> scores) const {
  double gain = 0.0;
  for (size_t c = 0; c < heaps_.size(); ++c) {
    gain += std::max(scores[c] - heaps_[c].front(), 0.0);
  }
  return gain;
}

double SelectionState::Commit(std::int64_t id, std::span<const double> scores) {
  const double gain = Gain(scores);
  for (size_t c = 0; c < heaps_.size(); ++c) {
    std::vector<double>& heap = heaps_[c];
    if (scores[c] <= heap.front()) continue;
    std::pop_heap(heap.begin(), heap.end(), std::greater<>());
    heap.back() = scores[c];
    std::push_heap(heap.begin(), heap.end(), std::greater<>());
  }
  selected_.push_back(id);
  objective_ += gain;
  return gain;
}

double SelectionState::HeapSum() const {
  double total = 0.0;
  for (const auto& heap : heaps_) {
    for (const double v : heap) total += v;
  }
  return total;
}

std::vector<std::int64_t> ViewSet::Ids() const {
  std::vector<std::int64_t> ids;
  for (const Pick& p : picks) ids.push_back(p.id);
  return ids;
}

namespace {

void CheckInputs(std::span<const Candidate> candidates,
                 const SelectionConfig& cfg) {
  cfg.Validate();
  if (candidates.empty()) {
    throw std::invalid_argument("selection needs at least one candidate");
  }
  for (const Candidate& c : candidates) {
    if (c.scores.size() != cfg.h.size()) {
      throw std::invalid_argument(
          "candidate " + std::to_string(c.id) + " has " +
          std::to_string(c.scores.size()) + " scores, expected " +
          std::to_string(cfg.h.size()));
    }
  }
}

}  // namespace

ViewSet GreedySelect(std::span<const Candidate> candidates,
                     const SelectionConfig& cfg) {
  CheckInputs(candidates, cfg);
  ViewSet out;
  out.config = cfg;
  SelectionState state(cfg.h);
  std::vector<size_t> remaining(candidates.size());
  for (size_t i = 0; i < remaining.size(); ++i) remaining[i] = i;

  for (int iter = 0; iter < cfg.k && !remaining.empty(); ++iter) {
    size_t best_pos = 0;
    double best_gain = -1.0;
    for (size_t pos = 0; pos < remaining.size(); ++pos) {
      const Candidate& c = candidates[remaining[pos]];
      const double g = state.Gain(c.scores);
      ++out.gain_evaluations;
      const Candidate& incumbent = candidates[remaining[best_pos]];
      if (g > best_gain || (g == best_gain && c.id < incumbent.id)) {
        best_gain = g;
        best_pos = pos;
      }
    }
    if (!(best_gain > 0.0)) break;
    const Candidate& chosen = candidates[remaining[best_pos]];
    state.Commit(chosen.id, chosen.scores);
    out.picks.push_back({chosen.id, best_gain});
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(best_pos));
  }
  out.objective = state.objective();
  return out;
}

ViewSet LazyGreedySelect(std::span<const Candidate> candidates,
                         const SelectionConfig& cfg) {
  CheckInputs(candidates, cfg);
  ViewSet out;
  out.config = cfg;
  SelectionState state(cfg.h);

  struct Entry {
    double bound;  // gain as of iteration `fresh_at`; an upper bound later
    std::int64_t id;
    size_t index;
    int fresh_at;
  };
  // Largest bound first; equal bounds pop the smaller id first.
  auto lower_priority = [](const Entry& a, const Entry& b) {
    if (a.bound != b.bound) return a.bound < b.bound;
    return a.id > b.id;
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(lower_priority)>
      queue(lower_priority);
  for (size_t i = 0; i < candidates.size(); ++i) {
    queue.push({state.Gain(candidates[i].scores), candidates[i].id, i, 0});
    ++out.gain_evaluations;
  }

  for (int iter = 0; iter < cfg.k && !queue.empty();) {
    Entry top = queue.top();
    queue.pop();
    if (top.fresh_at != iter) {
      top.bound = state.Gain(candidates[top.index].scores);
      top.fresh_at = iter;
      ++out.gain_evaluations;
      queue.push(top);
      continue;
    }
    // A fresh gain at the head dominates every other (upper-bounded) gain.
    if (!(top.bound > 0.0)) break;
    state.Commit(top.id, candidates[top.index].scores);
    out.picks.push_back({top.id, top.bound});
    ++iter;
  }
  out.objective = state.objective();
  return out;
}

BruteForceResult BruteForceSelect(std::span<const Candidate> candidates,
                                  const SelectionConfig& cfg,
                                  std::int64_t max_subsets) {
  CheckInputs(candidates, cfg);
  const int n = static_cast<int>(candidates.size());
  const int size = std::min(cfg.k, n);
  // C(n, size) with overflow guard.
  double subsets = 1.0;
  for (int i = 0; i < size; ++i) subsets = subsets * (n - i) / (i + 1);
  if (subsets > static_cast<double>(max_subsets)) {
    throw AlgorithmError("brute force instance too large: C(" +
                         std::to_string(n) + ", " + std::to_string(size) +
                         ") subsets");
  }

  // Enumerate index combinations over candidates sorted by id so the first
  // optimum found is the lexicographically smallest id set.
  std::vector<size_t> by_id(n);
  for (int i = 0; i < n; ++i) by_id[i] = i;
  std::sort(by_id.begin(), by_id.end(), [&](size_t a, size_t b) {
    return candidates[a].id < candidates[b].id;
  });
  std::vector<int> combo(size);
  for (int i = 0; i < size; ++i) combo[i] = i;
  BruteForceResult best;
  best.value = -1.0;
  std::vector<std::span<const double>> vectors(size);
  for (;;) {
    for (int i = 0; i < size; ++i) {
      vectors[i] = candidates[by_id[combo[i]]].scores;
    }
    const double value = ObjectiveValue(vectors, cfg.h);
    if (value > best.value) {
      best.value = value;
      best.ids.clear();
      for (int i = 0; i < size; ++i) {
        best.ids.push_back(candidates[by_id[combo[i]]].id);
      }
    }
    int i = size - 1;
    while (i >= 0 && combo[i] == n - size + i) --i;
    if (i < 0) break;
    ++combo[i];
    for (int j = i + 1; j < size; ++j) combo[j] = combo[j - 1] + 1;
  }
  return best;
}

void WriteSelectionManifest(const std::filesystem::path& path,
                            const ViewSet& set,
                            const std::string& config_hash) {
  json picks = json::array();
  for (const Pick& p : set.picks) {
    picks.push_back({{"id", p.id}, {"gain_at_pick", p.gain}});
  }
  json doc{{"format", "viewscope-selection"},
           {"config", {{"k", set.config.k}, {"h", set.config.h}}},
           {"objective", set.objective},
           {"gain_evaluations", set.gain_evaluations},
           {"picks", picks}};
  if (!config_hash.empty()) doc["config_hash"] = config_hash;
  WriteTextFile(path, doc.dump(1) + "\n");
}

ViewSet ReadSelectionManifest(const std::filesystem::path& path) {
  const std::string source = path.string();
  const json doc = ParseJsonText(ReadTextFile(path), source);
  ViewSet out;
  try {
    const json& cfg = JsonField(doc, "config", "$");
    out.config.k = JsonInt(JsonField(cfg, "k", "$.config"), "$.config.k");
    for (const json& v : JsonArray(JsonField(cfg, "h", "$.config"),
                                   "$.config.h")) {
      out.config.h.push_back(JsonInt(v, "$.config.h[]"));
    }
    out.objective = JsonNumber(JsonField(doc, "objective", "$"), "$.objective");
    for (const json& p : JsonArray(JsonField(doc, "picks", "$"), "$.picks")) {
      const json& id = JsonField(p, "id", "$.picks[]");
      if (!id.is_number_integer()) {
        throw ParseError("$.picks[].id: expected an integer");
      }
      out.picks.push_back(
          {id.get<std::int64_t>(),
           JsonNumber(JsonField(p, "gain_at_pick", "$.picks[]"),
                      "$.picks[].gain_at_pick")});
    }
  } catch (const ParseError& e) {
    throw ParseError(source + ": " + e.what());
  }
  return out;
}

}  // namespace viewscope
