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

#ifndef VIEWSCOPE_TILT_PRIOR_H_
#define VIEWSCOPE_TILT_PRIOR_H_

#include <random>
#include <span>
#include <vector>

#include "viewscope/geometry.h"

namespace viewscope {

// Distribution over how a camera is held: pitch from a Gaussian or a
// tabulated density, roll from a Gaussian (a point mass when roll_std is 0).
// Yaw is always uniform and drawn by the caller.
class TiltPrior {
 public:
  // Sampled pitches stay within +-kMaxPitch so cameras remain valid.
  static constexpr double kMaxPitch = DegToRad(89.0);

  static TiltPrior Gaussian(double pitch_mean, double pitch_std,
                            double roll_mean = 0.0, double roll_std = 0.0);
  // Piecewise-constant density over pitch from observed samples.
  static TiltPrior FromPitchSamples(std::span<const double> pitches, int bins,
                                    double roll_mean = 0.0,
                                    double roll_std = 0.0);
  // Mean -10 degrees, std 15 degrees, zero roll.
  static TiltPrior Default() {
    return Gaussian(DegToRad(-10.0), DegToRad(15.0));
  }

  double SamplePitch(std::mt19937_64& rng) const;
  double SampleRoll(std::mt19937_64& rng) const;

  bool tabulated() const { return !edges_.empty(); }
  double pitch_mean() const { return pitch_mean_; }
  double pitch_std() const { return pitch_std_; }
  double roll_mean() const { return roll_mean_; }
  double roll_std() const { return roll_std_; }
  const std::vector<double>& edges() const { return edges_; }
  const std::vector<double>& masses() const { return masses_; }

 private:
  double pitch_mean_ = 0.0;
  double pitch_std_ = 0.0;
  double roll_mean_ = 0.0;
  double roll_std_ = 0.0;
  std::vector<double> edges_;   // bins + 1 ascending edges, tabulated only
  std::vector<double> masses_;  // per-bin probability
};

}  // namespace viewscope

#endif  // VIEWSCOPE_TILT_PRIOR_H_
