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

// Comparison view samplers:
//   rand  random position outside object hulls, uniform direction
//   hum   rand at a fixed eye height
//   cat   per-category object closeups chosen from a ring of eye-height views
//   traj  views along the longest unobstructed walk through each room
//   heur  dense eye-height grid scored by per-object pixel salience

#ifndef VIEWSCOPE_BASELINES_H_
#define VIEWSCOPE_BASELINES_H_

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "viewscope/camera.h"
#include "viewscope/candidate.h"
#include "viewscope/free_grid.h"
#include "viewscope/scene.h"

namespace viewscope {

enum class BaselineKind { kRand, kHum, kCat, kTraj, kHeur };

const char* BaselineName(BaselineKind kind);
// Throws std::invalid_argument for unknown names.
BaselineKind ParseBaselineKind(const std::string& name);

struct BaselineConfig {
  double eye_height = 1.55;
  double heur_min_pixels = 100.0;
  double heur_pitch = DegToRad(-10.0);
  int heur_directions = 8;
  double grid_cell = 0.5;
  double clearance = 0.3;
  std::vector<double> cat_ring_radii = {0.75, 1.25, 2.0};
  int cat_ring_angles = 16;
  int views_total = 40;
  std::uint64_t seed = 0;
  int score_width = 80;
  int score_height = 60;
  double hfov = kDefaultHfov;
  double aspect = kDefaultAspect;
  int rejection_budget = 1000;

  // Throws std::invalid_argument.
  void Validate() const;
};

struct BaselineViews {
  std::vector<Candidate> views;  // unscored; ids count up from 0
  std::vector<std::string> warnings;
};

BaselineViews RandViews(const Scene& scene, const BaselineConfig& cfg,
                        std::mt19937_64& rng);
BaselineViews HumViews(const Scene& scene, const BaselineConfig& cfg,
                       std::mt19937_64& rng);
// Throws AlgorithmError when the scene has no selectable object.
BaselineViews CatViews(const Scene& scene, const BaselineConfig& cfg,
                       std::mt19937_64& rng);
BaselineViews TrajViews(const Scene& scene, const BaselineConfig& cfg,
                        std::mt19937_64& rng);
BaselineViews HeurViews(const Scene& scene, const BaselineConfig& cfg);

// Dispatch with a generator seeded from cfg.seed and the kind.
BaselineViews RunBaseline(BaselineKind kind, const Scene& scene,
                          const BaselineConfig& cfg);

// s = sum_i [p_i > m] (log p_i - log m).
double HeurScore(std::span<const double> pixel_counts, double min_pixels);

// Best ring view around one object: the feasible ring position whose render
// shows the largest fraction of the object's pixels; ties to the smaller
// angle index. nullopt when no ring position is feasible or none sees it.
struct RingView {
  Camera camera;
  double fraction;
  int angle_index;
  int radius_index;
};
std::optional<RingView> BestRingView(const Scene& scene, int flat_object,
                                     const BaselineConfig& cfg);

// The walk used by traj for one room.
struct TrajectoryPlan {
  ObstructionGrid grid;
  int seed_cell = -1;
  int start_cell = -1;  // farthest from seed
  int end_cell = -1;    // farthest from start
  std::vector<int> path;  // start -> end, 4-connected free cells
  Vec3 target;            // area-weighted centroid of object centroids
};
// nullopt when the seed's free component has fewer than two cells.
std::optional<TrajectoryPlan> PlanTrajectory(const Scene& scene, int room,
                                             const BaselineConfig& cfg);

// Breadth-first step distances over free 4-connected cells (-1 unreachable).
std::vector<int> GridDistances(const ObstructionGrid& grid, int source);

}  // namespace viewscope

#endif  // VIEWSCOPE_BASELINES_H_
