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

#include "viewscope/weights.h"

#include <cmath>
#include <stdexcept>

#include "json.hpp"
#include "viewscope/errors.h"
#include "viewscope/json_util.h"

namespace viewscope {

using nlohmann::json;

void CategoryWeights::Validate(int num_categories) const {
  if (size() != num_categories) {
    throw ValidationError("category weights: expected " +
                          std::to_string(num_categories) + " entries, got " +
                          std::to_string(size()));
  }
  for (int c = 0; c < size(); ++c) {
    if (!std::isfinite(w[c]) || w[c] < 0.0) {
      throw ValidationError("category weights: entry " + std::to_string(c) +
                            " must be finite and >= 0");
    }
  }
}

CategoryWeights ComputeRebalanceWeights(std::span<const double> example_freqs,
                                        std::span<const double> scene_freqs,
                                        const CategoryTable& table) {
  if (example_freqs.size() != scene_freqs.size()) {
    throw std::invalid_argument("frequency vectors differ in length");
  }
  CategoryWeights out{std::vector<double>(example_freqs.size(), 0.0)};
  for (size_t c = 0; c < example_freqs.size(); ++c) {
    if (table.IsStructural(static_cast<CategoryId>(c))) {
      out.w[c] = 1.0;
    } else if (scene_freqs[c] > 0.0) {
      out.w[c] = example_freqs[c] / scene_freqs[c];
    }
  }
  return out;
}

CategoryWeights LoadCategoryWeights(const std::filesystem::path& path,
                                    const CategoryTable& table) {
  const std::string source = path.string();
  const json doc = ParseJsonText(ReadTextFile(path), source);
  CategoryWeights out;
  try {
    const json& names = JsonArray(JsonField(doc, "categories", "$"),
                                  "$.categories");
    const json& weights = JsonArray(JsonField(doc, "weights", "$"),
                                    "$.weights");
    if (names.size() != weights.size()) {
      throw ParseError("$: categories and weights differ in length");
    }
    if (static_cast<int>(names.size()) != table.size()) {
      throw ParseError("$.categories: expected " +
                       std::to_string(table.size()) + " names");
    }
    for (size_t c = 0; c < names.size(); ++c) {
      const std::string at = "$.categories[" + std::to_string(c) + "]";
      if (JsonString(names[c], at) != table.name(static_cast<int>(c))) {
        throw ParseError(at + ": expected '" +
                         table.name(static_cast<int>(c)) + "'");
      }
      out.w.push_back(weights[c].is_null()
                          ? 0.0
                          : JsonNumber(weights[c], "$.weights[" +
                                                       std::to_string(c) + "]"));
    }
  } catch (const ParseError& e) {
    throw ParseError(source + ": " + e.what());
  }
  out.Validate(table.size());
  return out;
}

void SaveCategoryWeights(const std::filesystem::path& path,
                         const CategoryWeights& weights,
                         const CategoryTable& table) {
  json doc{{"categories", table.names()}, {"weights", weights.w}};
  WriteTextFile(path, doc.dump(1) + "\n");
}

}  // namespace viewscope
