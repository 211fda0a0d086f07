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

#ifndef VIEWSCOPE_CATEGORIES_H_
#define VIEWSCOPE_CATEGORIES_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace viewscope {

using CategoryId = int;

// Pixel value for "no category" in semantic rasters.
inline constexpr std::uint8_t kBackground = 255;

// Dense id -> name table. Ids are 0-based positions.
class CategoryTable {
 public:
  CategoryTable() = default;
  explicit CategoryTable(std::vector<std::string> names)
      : names_(std::move(names)) {}

  // The 40-class indoor taxonomy, in its canonical order (wall = 0).
  static CategoryTable Nyu40();

  int size() const { return static_cast<int>(names_.size()); }
  const std::string& name(CategoryId id) const { return names_.at(id); }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<CategoryId> Find(std::string_view name) const;

  // Walls, floor and ceiling: room shell rather than furniture.
  bool IsStructural(CategoryId id) const;

  // Stable 64-bit fingerprint of the names, used to detect mismatched
  // artifacts.
  std::uint64_t Fingerprint() const;

  friend bool operator==(const CategoryTable&, const CategoryTable&) = default;

 private:
  std::vector<std::string> names_;
};

// FNV-1a over bytes. Used for seeds and artifact fingerprints, so it must not
// depend on the standard library's std::hash.
std::uint64_t Fnv1a64(std::string_view bytes,
                      std::uint64_t basis = 0xcbf29ce484222325ULL);

}  // namespace viewscope

#endif  // VIEWSCOPE_CATEGORIES_H_
