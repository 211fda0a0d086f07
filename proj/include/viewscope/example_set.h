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

// Example image sets on disk:
//
//   <dir>/manifest.json
//     {"width": W, "height": H, "mode": "rgbd" | "rgb",
//      "categories": [names...],            (optional)
//      "images": [{"category": "000_cat.pgm", "depth": "000_dep.pgm"}, ...]}
//
// Category rasters are 8-bit PGM with 255 as background. Depth rasters are
// 16-bit PGM in millimeters; RGB-mode sets omit them.

#ifndef VIEWSCOPE_EXAMPLE_SET_H_
#define VIEWSCOPE_EXAMPLE_SET_H_

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "viewscope/categories.h"
#include "viewscope/render.h"

namespace viewscope {

enum class PixelMode { kRgbd, kRgb2d };

const char* PixelModeName(PixelMode mode);
PixelMode ParsePixelMode(const std::string& name);

struct ExampleSet {
  std::string name;
  PixelMode mode = PixelMode::kRgbd;
  // Present when the manifest lists names; used to reject mismatched tables.
  std::optional<CategoryTable> categories;
  // Depth is kNoDepth everywhere for RGB-mode images.
  std::vector<SemanticDepthImage> images;
};

// Loads and validates a set. `mode` is the mode the caller needs: loading an
// RGB directory as kRgbd fails on the first missing depth raster. Category
// ids must be < `num_categories` (255 is background).
// Throws IoError, ParseError or ValidationError.
ExampleSet LoadExampleSet(const std::filesystem::path& dir, PixelMode mode,
                          int num_categories);

// Writes rasters named NNN_cat.pgm / NNN_dep.pgm plus the manifest. Depth is
// rounded to millimeters and clamped to [1, 65535] on labeled pixels.
void SaveExampleSet(const std::filesystem::path& dir, const ExampleSet& set);

// Rounds labeled depth to the millimeter precision of stored rasters, so
// freshly rendered images compare exactly with saved ones.
void QuantizeDepth(SemanticDepthImage& image);

// Number of images each category appears in.
std::vector<double> ImageOccurrence(const std::vector<SemanticDepthImage>& images,
                                    int num_categories);

}  // namespace viewscope

#endif  // VIEWSCOPE_EXAMPLE_SET_H_
