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

#ifndef VIEWSCOPE_FREE_GRID_H_
#define VIEWSCOPE_FREE_GRID_H_

#include <cstdint>
#include <vector>

#include "viewscope/categories.h"
#include "viewscope/geometry.h"
#include "viewscope/scene.h"

namespace viewscope {

// Floor-level occupancy grid over a room's interior footprint. Cells are
// `cell` meters square; the grid is centered when the room is not an exact
// multiple of the cell size.
struct ObstructionGrid {
  double cell = 0.0;
  int nx = 0;
  int ny = 0;
  double x0 = 0.0;  // center of cell (0, 0)
  double y0 = 0.0;
  std::vector<std::uint8_t> obstructed;  // row-major, index = iy * nx + ix

  int Index(int ix, int iy) const { return iy * nx + ix; }
  bool IsFree(int ix, int iy) const { return !obstructed[Index(ix, iy)]; }
  double CenterX(int ix) const { return x0 + ix * cell; }
  double CenterY(int iy) const { return y0 + iy * cell; }
  int FreeCount() const;
};

// A cell is obstructed iff its center lies within `clearance` (inclusive) of
// the floor footprint of any non-structural object box. Throws
// std::invalid_argument when cell <= 0 or the room is smaller than one cell.
ObstructionGrid FreeGrid(const Room& room, const CategoryTable& categories,
                         double cell, double clearance);

}  // namespace viewscope

#endif  // VIEWSCOPE_FREE_GRID_H_
