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

// Synthetic apartment suites. Rooms are 8-100 m^2 boxes with a floor, a
// ceiling and four walls, furnished from per-room-type templates with at
// least five objects. Each suite carries an example image set rendered from a
// known "photographer" camera distribution, standing in for a real RGBD
// photo collection.

#ifndef VIEWSCOPE_SUITE_H_
#define VIEWSCOPE_SUITE_H_

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "viewscope/candidate.h"
#include "viewscope/example_set.h"
#include "viewscope/scene.h"

namespace viewscope {

inline constexpr double kMinRoomArea = 8.0;
inline constexpr double kMaxRoomArea = 100.0;
inline constexpr int kMinRoomObjects = 5;

// Where people stand and how they hold the camera.
struct PhotographerModel {
  double height_mean = 1.35;
  double height_std = 0.12;
  double height_min = 1.0;
  double height_max = 1.7;
  double yaw_std = DegToRad(35.0);  // around the bearing to the room center
  double pitch_mean = DegToRad(-15.0);
  double pitch_std = DegToRad(8.0);
  double roll_std = DegToRad(2.0);
  double wall_margin = 0.3;    // keep-out from walls
  double object_margin = 0.25; // keep-out from furniture
};

struct SuiteParams {
  std::string preset = "small";  // small (5 rooms) or medium (12 rooms)
  std::uint64_t seed = 7;
  int example_images = 200;
  int example_width = 160;
  int example_height = 120;
  PhotographerModel photographer;

  void Validate() const;  // throws std::invalid_argument
};

struct Suite {
  std::string name;  // e.g. apartment_small
  Scene scene;
  std::vector<Candidate> truth_cameras;  // one per example image
  ExampleSet examples;
};

// Rooms and furniture only.
Scene GenerateApartment(const std::string& preset, std::uint64_t seed);

// Cameras spread round-robin over rooms (rooms whose ceiling sits below the
// photographer's height range are skipped).
std::vector<Candidate> SampleTruthCameras(const Scene& scene,
                                          const PhotographerModel& model,
                                          int count, std::mt19937_64& rng);

Suite GenerateSuite(const SuiteParams& params);

// Writes <out>/scenes/<name>.json, <out>/scenes/<name>_truth.jsonl and the
// example set under <out>/examples/<name>/.
struct SuitePaths {
  std::filesystem::path scene;
  std::filesystem::path truth;
  std::filesystem::path examples;
};
SuitePaths SuiteOutputPaths(const std::filesystem::path& out,
                            const std::string& name);
SuitePaths WriteSuite(const std::filesystem::path& out, const Suite& suite);

}  // namespace viewscope

#endif  // VIEWSCOPE_SUITE_H_
