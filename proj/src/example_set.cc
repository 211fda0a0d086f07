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

#include "viewscope/example_set.h"

#include <cmath>
#include <cstdio>

#include "json.hpp"
#include "viewscope/errors.h"
#include "viewscope/json_util.h"
#include "viewscope/pgm.h"

namespace viewscope {

using nlohmann::json;

const char* PixelModeName(PixelMode mode) {
  return mode == PixelMode::kRgbd ? "rgbd" : "rgb";
}

PixelMode ParsePixelMode(const std::string& name) {
  if (name == "rgbd") return PixelMode::kRgbd;
  if (name == "rgb" || name == "rgb_2d") return PixelMode::kRgb2d;
  throw ParseError("unknown pixel mode '" + name + "' (expected rgbd or rgb)");
}

namespace {

std::string DefaultDepthName(const std::string& category_name) {
  const std::string suffix = "_cat.pgm";
  if (category_name.size() > suffix.size() &&
      category_name.compare(category_name.size() - suffix.size(),
                            suffix.size(), suffix) == 0) {
    return category_name.substr(0, category_name.size() - suffix.size()) +
           "_dep.pgm";
  }
  return category_name + ".depth.pgm";
}

std::uint16_t DepthMillimeters(double depth) {
  return static_cast<std::uint16_t>(
      std::clamp(std::round(depth * 1000.0), 1.0, 65535.0));
}

}  // namespace

ExampleSet LoadExampleSet(const std::filesystem::path& dir, PixelMode mode,
                          int num_categories) {
  const std::filesystem::path manifest_path = dir / "manifest.json";
  const std::string source = manifest_path.string();
  const json doc = ParseJsonText(ReadTextFile(manifest_path), source);

  ExampleSet set;
  set.name = dir.filename().string();
  if (set.name.empty()) set.name = dir.parent_path().filename().string();
  set.mode = mode;
  int width = 0;
  int height = 0;
  json images;
  try {
    width = JsonInt(JsonField(doc, "width", "$"), "$.width");
    height = JsonInt(JsonField(doc, "height", "$"), "$.height");
    images = JsonArray(JsonField(doc, "images", "$"), "$.images");
    if (doc.contains("categories")) {
      std::vector<std::string> names;
      for (const json& n : JsonArray(doc["categories"], "$.categories")) {
        names.push_back(JsonString(n, "$.categories[]"));
      }
      set.categories = CategoryTable(std::move(names));
    }
  } catch (const ParseError& e) {
    throw ParseError(source + ": " + e.what());
  }
  if (images.empty()) throw ValidationError(source + ": example set is empty");
  if (set.categories && set.categories->size() != num_categories) {
    throw ValidationError(source + ": manifest lists " +
                          std::to_string(set.categories->size()) +
                          " categories, expected " +
                          std::to_string(num_categories));
  }

  for (size_t i = 0; i < images.size(); ++i) {
    const std::string ipath = "$.images[" + std::to_string(i) + "]";
    std::string cat_name;
    try {
      cat_name = JsonString(JsonField(images[i], "category", ipath),
                            ipath + ".category");
    } catch (const ParseError& e) {
      throw ParseError(source + ": " + e.what());
    }
    const std::filesystem::path cat_path = dir / cat_name;
    if (!std::filesystem::exists(cat_path)) {
      throw IoError("missing category raster " + cat_path.string());
    }
    const PgmImage cat = ReadPgm(cat_path);
    if (cat.width != width || cat.height != height) {
      throw ValidationError(
          "size mismatch: " + cat_path.string() + " is " +
          std::to_string(cat.width) + "x" + std::to_string(cat.height) +
          ", manifest says " + std::to_string(width) + "x" +
          std::to_string(height));
    }
    SemanticDepthImage img(width, height);
    for (size_t p = 0; p < cat.pixels.size(); ++p) {
      const int c = cat.pixels[p];
      if (c != kBackground && c >= num_categories) {
        throw ValidationError("unknown category id " + std::to_string(c) +
                              " in " + cat_path.string());
      }
      img.category[p] = static_cast<std::uint8_t>(c);
    }

    if (mode == PixelMode::kRgbd) {
      const std::string dep_name =
          images[i].contains("depth") && images[i]["depth"].is_string()
              ? images[i]["depth"].get<std::string>()
              : DefaultDepthName(cat_name);
      const std::filesystem::path dep_path = dir / dep_name;
      if (!std::filesystem::exists(dep_path)) {
        throw IoError("missing depth raster " + dep_path.string() +
                      " (image " + std::to_string(i) + ")");
      }
      const PgmImage dep = ReadPgm(dep_path);
      if (dep.width != cat.width || dep.height != cat.height) {
        throw ValidationError(
            "size mismatch: depth raster " + dep_path.string() + " is " +
            std::to_string(dep.width) + "x" + std::to_string(dep.height) +
            " but category raster " + cat_path.string() + " is " +
            std::to_string(cat.width) + "x" + std::to_string(cat.height));
      }
      for (size_t p = 0; p < dep.pixels.size(); ++p) {
        if (img.category[p] == kBackground) continue;
        if (dep.pixels[p] == 0) {
          throw ValidationError("labeled pixel " + std::to_string(p) +
                                " has zero depth in " + dep_path.string());
        }
        img.depth[p] = dep.pixels[p] / 1000.0;
      }
    }
    set.images.push_back(std::move(img));
  }
  return set;
}

void SaveExampleSet(const std::filesystem::path& dir, const ExampleSet& set) {
  std::filesystem::create_directories(dir);
  json entries = json::array();
  int width = 0;
  int height = 0;
  for (size_t i = 0; i < set.images.size(); ++i) {
    const SemanticDepthImage& img = set.images[i];
    width = img.width;
    height = img.height;
    char stem[32];
    std::snprintf(stem, sizeof(stem), "%03zu", i);
    const std::string cat_name = std::string(stem) + "_cat.pgm";
    PgmImage cat{img.width, img.height, 255, {}};
    cat.pixels.assign(img.category.begin(), img.category.end());
    WritePgm(dir / cat_name, cat);
    json entry{{"category", cat_name}};
    if (set.mode == PixelMode::kRgbd) {
      const std::string dep_name = std::string(stem) + "_dep.pgm";
      PgmImage dep{img.width, img.height, 65535, {}};
      dep.pixels.resize(img.size(), 0);
      for (size_t p = 0; p < img.size(); ++p) {
        if (img.category[p] == kBackground) continue;
        dep.pixels[p] = DepthMillimeters(img.depth[p]);
      }
      WritePgm(dir / dep_name, dep);
      entry["depth"] = dep_name;
    }
    entries.push_back(entry);
  }
  json doc{{"width", width},
           {"height", height},
           {"mode", PixelModeName(set.mode)},
           {"images", entries}};
  if (set.categories) doc["categories"] = set.categories->names();
  WriteTextFile(dir / "manifest.json", doc.dump(1) + "\n");
}

void QuantizeDepth(SemanticDepthImage& image) {
  for (size_t p = 0; p < image.size(); ++p) {
    if (image.category[p] == kBackground) continue;
    image.depth[p] = DepthMillimeters(image.depth[p]) / 1000.0;
  }
}

std::vector<double> ImageOccurrence(
    const std::vector<SemanticDepthImage>& images, int num_categories) {
  std::vector<double> counts(num_categories, 0.0);
  std::vector<char> seen(num_categories);
  for (const SemanticDepthImage& img : images) {
    std::fill(seen.begin(), seen.end(), 0);
    for (const std::uint8_t c : img.category) {
      if (c != kBackground && c < num_categories) seen[c] = 1;
    }
    for (int c = 0; c < num_categories; ++c) counts[c] += seen[c];
  }
  return counts;
}

}  // namespace viewscope
