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

// Candidate view generation. Each room is voxelized; every voxel is weighted
// by casting rays from inside it and summing the depth marginal of the
// category each ray hits. Cameras are then sampled in voxels proportionally
// to that weight, rendered at a small scoring resolution and scored per
// category against the example pdfs. The best few per room survive.

#ifndef VIEWSCOPE_CANDIDATE_GEN_H_
#define VIEWSCOPE_CANDIDATE_GEN_H_

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "viewscope/camera.h"
#include "viewscope/candidate.h"
#include "viewscope/pdf.h"
#include "viewscope/render.h"
#include "viewscope/scene.h"
#include "viewscope/tilt_prior.h"
#include "viewscope/weights.h"

namespace viewscope {

using Rng = std::mt19937_64;

// Which hit counts normalize a voxel's per-category sums.
enum class HitCountScope {
  kVoxel,  // counts reset for every voxel
  kRoom,   // counts accumulated over the whole room
};

struct GenConfig {
  static constexpr int kMinVoxels = 1000;
  static constexpr int kMaxVoxels = 10000;

  int target_voxels = 4000;
  int rays_per_voxel = 200;
  int candidates_per_room = 1500;
  int keep_per_room = 20;
  bool uniform_voxel_weights = false;
  bool divide_by_observation_frequency = true;
  HitCountScope hit_count_scope = HitCountScope::kVoxel;
  std::uint64_t seed = 0;
  int score_width = 80;
  int score_height = 60;
  double hfov = kDefaultHfov;
  double aspect = kDefaultAspect;
  int max_eye_retries = 100;

  // Throws std::invalid_argument.
  void Validate() const;
  int ClampedTargetVoxels() const;
};

// Near-cubic subdivision of a room's interior.
struct VoxelGrid {
  Box bounds;
  int nx = 1;
  int ny = 1;
  int nz = 1;

  int count() const { return nx * ny * nz; }
  Vec3 CellSize() const;
  Box VoxelBox(int v) const;  // v = (iz * ny + iy) * nx + ix
};

// Cells of roughly equal edge length whose count is close to `target`.
VoxelGrid MakeVoxelGrid(const Box& bounds, int target);

struct VoxelWeights {
  std::string room_id;
  VoxelGrid grid;
  int num_categories = 0;
  HitCountScope scope = HitCountScope::kVoxel;
  std::vector<double> weight;          // W_v per voxel
  std::vector<double> category_sums;   // W_{v,c}, index v * n + c
  // K counts: index v * n + c for kVoxel, c for kRoom.
  std::vector<std::int64_t> hit_counts;
  bool uniform = false;

  double Total() const;
  bool AllZero() const { return !(Total() > 0.0); }
};

// Weights every voxel of `grid` (which should cover `scene.rooms()[room]`).
VoxelWeights WeightVoxels(const Scene& scene, int room, const VoxelGrid& grid,
                          const CategoryPdfSet& pdfs,
                          const CategoryWeights& weights,
                          const TiltPrior& tilt, const GenConfig& cfg,
                          Rng& rng);

// Cameras with eyes drawn from voxels proportionally to their weight.
// Throws AlgorithmError when every weight is zero (outside uniform mode) or
// an eye cannot be placed outside geometry within the retry budget.
std::vector<Camera> SampleCandidates(const Scene& scene, int room,
                                     const VoxelWeights& vw,
                                     const TiltPrior& tilt,
                                     const GenConfig& cfg, Rng& rng);

struct ImageScore {
  double whole_image = 0.0;           // sum of f_c over all labeled pixels
  std::vector<double> per_category;   // W_{i,c}
  double aggregate = 0.0;             // sum of per_category
};

ImageScore ScoreCandidate(const SemanticDepthImage& image,
                          const CategoryPdfSet& pdfs,
                          const CategoryWeights& weights,
                          bool divide_by_observation_frequency);

// Top `keep` by aggregate score, ties to the smaller id.
std::vector<Candidate> FilterTop(std::vector<Candidate> candidates, int keep);

struct RoomCandidates {
  std::string room_id;
  std::vector<Candidate> candidates;
  bool zero_weight = false;  // room skipped: every voxel weight was zero
};

// Per-room rng seed; depends only on the run seed and the room id.
std::uint64_t RoomSeed(std::uint64_t seed, const std::string& room_id);

RoomCandidates GenerateRoom(const Scene& scene, int room,
                            const CategoryPdfSet& pdfs,
                            const CategoryWeights& weights,
                            const TiltPrior& tilt, const GenConfig& cfg);

// All rooms, fanned out over `workers` threads. Output is in room order and
// independent of the worker count.
std::vector<RoomCandidates> GenerateAll(const Scene& scene,
                                        const CategoryPdfSet& pdfs,
                                        const CategoryWeights& weights,
                                        const TiltPrior& tilt,
                                        const GenConfig& cfg, int workers);

}  // namespace viewscope

#endif  // VIEWSCOPE_CANDIDATE_GEN_H_
