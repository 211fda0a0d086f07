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

#include "viewscope/render.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace viewscope {
namespace {

struct RawHit {
  double t = std::numeric_limits<double>::infinity();
  int box = -1;
};

// Rooms are visited in order of hull entry so that the enclosing room's
// geometry usually settles the nearest hit before distant rooms are tested.
RawHit TraceUnchecked(const Scene& scene, const Vec3& origin, const Vec3& dir) {
  const Vec3 inv = InverseDirection(dir);
  const int room_count = static_cast<int>(scene.rooms().size());
  thread_local std::vector<std::pair<double, int>> order;
  order.clear();
  for (int r = 0; r < room_count; ++r) {
    const auto span = IntersectSlabs(scene.RoomHull(r), origin, inv);
    if (!span || span->t_far <= 0.0) continue;
    order.emplace_back(std::max(span->t_near, 0.0), r);
  }
  std::sort(order.begin(), order.end());

  RawHit best;
  const std::vector<FlatBox>& boxes = scene.boxes();
  for (const auto& [entry, r] : order) {
    if (entry >= best.t) break;
    const int end = scene.RoomBoxEnd(r);
    for (int b = scene.RoomBoxBegin(r); b < end; ++b) {
      const auto span = IntersectSlabs(boxes[b].box, origin, inv);
      if (!span) continue;
      double t;
      if (span->t_near > 0.0) {
        t = span->t_near;
      } else if (span->t_far > 0.0) {
        t = span->t_far;
      } else {
        continue;
      }
      if (t < best.t) {
        best.t = t;
        best.box = b;
      }
    }
  }
  return best;
}

void CheckRenderArgs(const Camera& camera, int width, int height) {
  if (width < 1 || height < 1) {
    throw std::invalid_argument("render dimensions must be >= 1");
  }
  if (!camera.IsValid()) throw std::invalid_argument("invalid camera");
}

}  // namespace

std::optional<RayHit> RayIntersect(const Scene& scene, const Vec3& origin,
                                   const Vec3& direction) {
  if (std::abs(Norm(direction) - 1.0) > 1e-9) {
    throw std::invalid_argument("ray direction must be unit length");
  }
  const RawHit raw = TraceUnchecked(scene, origin, direction);
  if (raw.box < 0) return std::nullopt;
  const FlatBox& fb = scene.boxes()[raw.box];
  return RayHit{origin + direction * raw.t, raw.t, fb.category, fb.object,
                fb.room};
}

Vec3 PixelRay(const Camera& camera, const CameraBasis& basis, int x, int y,
              int width, int height) {
  const double tan_h = std::tan(camera.hfov / 2.0);
  const double tan_v = tan_h / camera.aspect;
  const double u = (2.0 * (x + 0.5) / width - 1.0) * tan_h;
  const double v = (1.0 - 2.0 * (y + 0.5) / height) * tan_v;
  return Normalized(basis.forward + basis.right * u + basis.up * v);
}

InstanceRender RenderViewWithInstances(const Scene& scene,
                                       const Camera& camera, int width,
                                       int height) {
  CheckRenderArgs(camera, width, height);
  InstanceRender out{SemanticDepthImage(width, height),
                     std::vector<int>(static_cast<size_t>(width) * height, -1)};
  const CameraBasis basis = camera.Basis();
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const Vec3 dir = PixelRay(camera, basis, x, y, width, height);
      const RawHit hit = TraceUnchecked(scene, camera.position, dir);
      if (hit.box < 0) continue;
      const FlatBox& fb = scene.boxes()[hit.box];
      const size_t idx = out.image.Index(x, y);
      out.image.category[idx] = static_cast<std::uint8_t>(fb.category);
      out.image.depth[idx] = hit.t * Dot(dir, basis.forward);
      out.object[idx] = fb.object;
    }
  }
  return out;
}

SemanticDepthImage RenderView(const Scene& scene, const Camera& camera,
                              int width, int height) {
  return RenderViewWithInstances(scene, camera, width, height).image;
}

}  // namespace viewscope
