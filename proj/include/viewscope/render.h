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

// Exact slab-test raycasting against a box scene, and the pinhole renderer
// that produces semantic + depth images from it.

#ifndef VIEWSCOPE_RENDER_H_
#define VIEWSCOPE_RENDER_H_

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "viewscope/camera.h"
#include "viewscope/categories.h"
#include "viewscope/geometry.h"
#include "viewscope/scene.h"

namespace viewscope {

inline constexpr double kNoDepth = std::numeric_limits<double>::infinity();

// Row-major semantic + depth raster. Depth is z-depth in meters along the
// optical axis; background pixels carry kBackground and kNoDepth.
struct SemanticDepthImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> category;
  std::vector<double> depth;

  SemanticDepthImage() = default;
  SemanticDepthImage(int w, int h)
      : width(w),
        height(h),
        category(static_cast<size_t>(w) * h, kBackground),
        depth(static_cast<size_t>(w) * h, kNoDepth) {}

  size_t Index(int x, int y) const {
    return static_cast<size_t>(y) * width + x;
  }
  size_t size() const { return category.size(); }

  friend bool operator==(const SemanticDepthImage&,
                         const SemanticDepthImage&) = default;
};

struct RayHit {
  Vec3 point;
  double distance;  // euclidean length from the origin
  CategoryId category;
  int object;  // scene-wide object index
  int room;
};

// Nearest intersection with t > 0. `direction` must be unit length to 1e-9;
// throws std::invalid_argument otherwise. An origin inside a box reports the
// box's exit face.
std::optional<RayHit> RayIntersect(const Scene& scene, const Vec3& origin,
                                   const Vec3& direction);

// One primary ray per pixel center. Throws std::invalid_argument for
// non-positive dimensions or an invalid camera.
SemanticDepthImage RenderView(const Scene& scene, const Camera& camera,
                              int width, int height);

// Same render plus the scene-wide object index per pixel (-1 on miss).
struct InstanceRender {
  SemanticDepthImage image;
  std::vector<int> object;
};
InstanceRender RenderViewWithInstances(const Scene& scene,
                                       const Camera& camera, int width,
                                       int height);

// World-space unit ray through the center of pixel (x, y).
Vec3 PixelRay(const Camera& camera, const CameraBasis& basis, int x, int y,
              int width, int height);

}  // namespace viewscope

#endif  // VIEWSCOPE_RENDER_H_
