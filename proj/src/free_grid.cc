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

#include "viewscope/free_grid.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace viewscope {

int ObstructionGrid::FreeCount() const {
  return static_cast<int>(
      std::count(obstructed.begin(), obstructed.end(), std::uint8_t{0}));
}

ObstructionGrid FreeGrid(const Room& room, const CategoryTable& categories,
                         double cell, double clearance) {
  if (!(cell > 0.0)) throw std::invalid_argument("grid cell must be > 0");
  const Vec3 extent = room.bounds.Extent();
  ObstructionGrid grid;
  grid.cell = cell;
  grid.nx = static_cast<int>(std::floor(extent.x / cell + 1e-9));
  grid.ny = static_cast<int>(std::floor(extent.y / cell + 1e-9));
  if (grid.nx < 1 || grid.ny < 1) {
    throw std::invalid_argument("room '" + room.id +
                                "' is smaller than one grid cell");
  }
  grid.x0 = room.bounds.min.x + (extent.x - grid.nx * cell) / 2 + cell / 2;
  grid.y0 = room.bounds.min.y + (extent.y - grid.ny * cell) / 2 + cell / 2;
  grid.obstructed.assign(static_cast<size_t>(grid.nx) * grid.ny, 0);

  for (const SceneObject& obj : room.objects) {
    if (categories.IsStructural(obj.category)) continue;
    for (const Box& b : obj.boxes) {
      // Only cells inside the footprint grown by the clearance can be hit.
      const int ix_lo = std::max(
          0, static_cast<int>(std::floor((b.min.x - clearance - grid.x0) /
                                         cell)));
      const int ix_hi = std::min(
          grid.nx - 1,
          static_cast<int>(std::ceil((b.max.x + clearance - grid.x0) / cell)));
      const int iy_lo = std::max(
          0, static_cast<int>(std::floor((b.min.y - clearance - grid.y0) /
                                         cell)));
      const int iy_hi = std::min(
          grid.ny - 1,
          static_cast<int>(std::ceil((b.max.y + clearance - grid.y0) / cell)));
      for (int iy = iy_lo; iy <= iy_hi; ++iy) {
        for (int ix = ix_lo; ix <= ix_hi; ++ix) {
          const double px = grid.CenterX(ix);
          const double py = grid.CenterY(iy);
          const double dx = std::max({b.min.x - px, 0.0, px - b.max.x});
          const double dy = std::max({b.min.y - py, 0.0, py - b.max.y});
          if (std::hypot(dx, dy) <= clearance) {
            grid.obstructed[grid.Index(ix, iy)] = 1;
          }
        }
      }
    }
  }
  return grid;
}

}  // namespace viewscope
