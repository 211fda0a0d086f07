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

// Everything a run needs, loaded from an INI file whose sections mirror the
// sub-configs:
//
//   [run]       output_dir seed workers preset(default|single_image)
//   [paths]     scene examples weights(rebalance|uniform|nyu40|<file>)
//   [suite]     preset seed example_images example_width example_height
//   [pdf]       bins_x bins_y bins_d d_max mode single_image_mode
//               depth_sigma_frac
//   [generate]  target_voxels rays_per_voxel candidates_per_room
//               keep_per_room uniform_voxel_weights
//               divide_by_observation_frequency hit_count_scope(voxel|room)
//               score_width score_height hfov_deg aspect tilt_mean_deg
//               tilt_std_deg roll_std_deg max_eye_retries
//   [select]    k h lazy
//   [baseline]  eye_height heur_min_pixels heur_pitch_deg heur_directions
//               grid_cell clearance cat_ring_radii cat_ring_angles
//               views_total rejection_budget
//   [emd]       bins threshold d_max eval_width eval_height
//   [export]    width height
//
// Unknown sections or keys are errors. Unset keys keep their defaults.

#ifndef VIEWSCOPE_RUN_CONFIG_H_
#define VIEWSCOPE_RUN_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "viewscope/baselines.h"
#include "viewscope/candidate_gen.h"
#include "viewscope/emd.h"
#include "viewscope/pdf.h"
#include "viewscope/suite.h"
#include "viewscope/tilt_prior.h"

namespace viewscope {

struct RunConfig {
  std::filesystem::path output_dir = "out";
  std::uint64_t seed = 0;
  int workers = 1;
  std::string preset = "default";

  std::filesystem::path scene;     // empty: the suite's scene
  std::filesystem::path examples;  // empty: the suite's example set
  std::string weights = "rebalance";

  SuiteParams suite;
  PdfConfig pdf;
  GenConfig gen;
  double tilt_mean_deg = -10.0;
  double tilt_std_deg = 15.0;
  double roll_std_deg = 0.0;
  int select_k = 40;
  std::vector<int> select_h;  // empty: max(1, floor(k / n)) for every c
  bool lazy = true;
  BaselineConfig baseline;
  EmdConfig emd;
  int eval_width = 160;
  int eval_height = 120;
  int export_width = 320;
  int export_height = 240;

  // Pushes the run seed and camera intrinsics into the sub-configs.
  void Propagate();
  // 3500 samples per room, no frequency division, uniform category
  // weights, Gaussian depth deposits.
  void ApplySingleImagePreset();
  void Validate() const;  // throws std::invalid_argument

  TiltPrior Tilt() const;
  // Canonical "section.key = value" lines, sorted by section.
  std::string Echo() const;
  // FNV-1a of the echo without run-local keys (workers, output_dir): equal
  // for runs that must produce identical artifacts.
  std::string Hash() const;
};

// Throws ParseError (with the file name) or std::invalid_argument.
RunConfig LoadRunConfig(const std::filesystem::path& path);
RunConfig ParseRunConfig(const std::string& text, const std::string& source);

}  // namespace viewscope

#endif  // VIEWSCOPE_RUN_CONFIG_H_
