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

#include "viewscope/tilt_prior.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace viewscope {

TiltPrior TiltPrior::Gaussian(double pitch_mean, double pitch_std,
                              double roll_mean, double roll_std) {
  if (!(pitch_std >= 0.0) || !(roll_std >= 0.0)) {
    throw std::invalid_argument("tilt prior std must be >= 0");
  }
  if (std::abs(pitch_mean) >= kMaxPitch) {
    throw std::invalid_argument("tilt prior pitch mean out of range");
  }
  TiltPrior p;
  p.pitch_mean_ = pitch_mean;
  p.pitch_std_ = pitch_std;
  p.roll_mean_ = roll_mean;
  p.roll_std_ = roll_std;
  return p;
}

TiltPrior TiltPrior::FromPitchSamples(std::span<const double> pitches,
                                      int bins, double roll_mean,
                                      double roll_std) {
  if (pitches.empty() || bins < 1) {
    throw std::invalid_argument("tabulated tilt prior needs samples and bins");
  }
  TiltPrior p = Gaussian(0.0, 0.0, roll_mean, roll_std);
  double lo = *std::min_element(pitches.begin(), pitches.end());
  double hi = *std::max_element(pitches.begin(), pitches.end());
  lo = std::max(lo, -kMaxPitch);
  hi = std::min(hi, kMaxPitch);
  if (!(hi > lo)) {
    // Degenerate sample: a narrow bin around the single value.
    lo -= 1e-6;
    hi += 1e-6;
  }
  p.edges_.resize(bins + 1);
  for (int b = 0; b <= bins; ++b) p.edges_[b] = lo + (hi - lo) * b / bins;
  p.masses_.assign(bins, 0.0);
  double sum = 0.0;
  for (const double v : pitches) {
    const int b = std::clamp(
        static_cast<int>(std::floor((v - lo) / (hi - lo) * bins)), 0,
        bins - 1);
    p.masses_[b] += 1.0;
    sum += v;
  }
  for (double& m : p.masses_) m /= static_cast<double>(pitches.size());
  p.pitch_mean_ = sum / static_cast<double>(pitches.size());
  return p;
}

double TiltPrior::SamplePitch(std::mt19937_64& rng) const {
  if (tabulated()) {
    std::discrete_distribution<int> pick(masses_.begin(), masses_.end());
    std::uniform_real_distribution<double> within(0.0, 1.0);
    const int b = pick(rng);
    const double v = edges_[b] + (edges_[b + 1] - edges_[b]) * within(rng);
    return std::clamp(v, -kMaxPitch, kMaxPitch);
  }
  if (pitch_std_ == 0.0) return pitch_mean_;
  std::normal_distribution<double> normal(pitch_mean_, pitch_std_);
  for (;;) {
    const double v = normal(rng);
    if (std::abs(v) <= kMaxPitch) return v;
  }
}

double TiltPrior::SampleRoll(std::mt19937_64& rng) const {
  if (roll_std_ == 0.0) return roll_mean_;
  std::normal_distribution<double> normal(roll_mean_, roll_std_);
  return normal(rng);
}

}  // namespace viewscope
