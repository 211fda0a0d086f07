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

#ifndef VIEWSCOPE_CAMERA_H_
#define VIEWSCOPE_CAMERA_H_

#include "viewscope/geometry.h"

namespace viewscope {

inline constexpr double kDefaultHfov = DegToRad(57.0);
inline constexpr double kDefaultAspect = 4.0 / 3.0;

// Orthonormal right-handed camera frame.
struct CameraBasis {
  Vec3 forward;
  Vec3 right;
  Vec3 up;
};

// Six degrees of freedom: eye position plus yaw/pitch/roll. World up is +z.
// Yaw rotates about world up (yaw 0 looks along +x, yaw pi/2 along +y),
// pitch raises the view axis above the horizon, roll spins the image about
// the view axis. Field of view and aspect are fixed per run.
struct Camera {
  Vec3 position;
  double yaw = 0.0;
  double pitch = 0.0;
  double roll = 0.0;
  double hfov = kDefaultHfov;
  double aspect = kDefaultAspect;

  // pitch in (-pi/2, pi/2), hfov in (0, pi), aspect > 0, all finite.
  bool IsValid() const;
  CameraBasis Basis() const;

  friend bool operator==(const Camera&, const Camera&) = default;
};

// Unit vector for yaw/pitch in the world frame.
Vec3 DirectionFromYawPitch(double yaw, double pitch);

// Yaw and pitch of the unit vector pointing from `from` to `to`.
struct YawPitch {
  double yaw;
  double pitch;
};
YawPitch LookAt(const Vec3& from, const Vec3& to);

}  // namespace viewscope

#endif  // VIEWSCOPE_CAMERA_H_
