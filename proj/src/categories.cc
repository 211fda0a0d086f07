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

#include "viewscope/categories.h"

#include <algorithm>

namespace viewscope {

CategoryTable CategoryTable::Nyu40() {
  return CategoryTable({
      "wall",           "floor",       "cabinet",        "bed",
      "chair",          "sofa",        "table",          "door",
      "window",         "bookshelf",   "picture",        "counter",
      "blinds",         "desk",        "shelves",        "curtain",
      "dresser",        "pillow",      "mirror",         "floor_mat",
      "clothes",        "ceiling",     "books",          "refridgerator",
      "television",     "paper",       "towel",          "shower_curtain",
      "box",            "whiteboard",  "person",         "night_stand",
      "toilet",         "sink",        "lamp",           "bathtub",
      "bag",            "otherstructure", "otherfurniture", "otherprop",
  });
}

std::optional<CategoryId> CategoryTable::Find(std::string_view name) const {
  const auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<CategoryId>(it - names_.begin());
}

bool CategoryTable::IsStructural(CategoryId id) const {
  if (id < 0 || id >= size()) return false;
  const std::string& n = names_[id];
  return n == "wall" || n == "floor" || n == "ceiling";
}

std::uint64_t CategoryTable::Fingerprint() const {
  std::uint64_t h = Fnv1a64("categories");
  for (const std::string& n : names_) {
    h = Fnv1a64(n, h);
    h = Fnv1a64(std::string_view("\0", 1), h);
  }
  return h;
}

std::uint64_t Fnv1a64(std::string_view bytes, std::uint64_t basis) {
  std::uint64_t h = basis;
  for (const char ch : bytes) {
    h ^= static_cast<std::uint8_t>(ch);
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace viewscope
