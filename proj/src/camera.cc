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

#include "viewscope/camera.h"

#include <cmath>

namespace viewscope {

bool Camera::IsValid() const {
  const bool finite = std::isfinite(position.x) && std::isfinite(position.y) &&
                      std::isfinite(position.z) && std::isfinite(yaw) &&
                      std::isfinite(pitch) && std::isfinite(roll);
  return finite && pitch > -kPi / 2 && pitch < kPi / 2 && hfov > 0.0 &&
         hfov < kPi && aspect > 0.0;
}

Vec3 DirectionFromYawPitch(double yaw, double pitch) {
  const double cp = std::cos(pitch);
  return {cp * std::cos(yaw), cp * std::sin(yaw), std::sin(pitch)};
}

CameraBasis Camera::Basis() const {
  const Vec3 forward = DirectionFromYawPitch(yaw, pitch);
  // forward x world-up, normalized; independent of pitch.
  const Vec3 right0{std::sin(yaw), -std::cos(yaw), 0.0};
  const Vec3 up0 = Cross(right0, forward);
  const double cr = std::cos(roll);
  const double sr = std::sin(roll);
  return {forward, right0 * cr + up0 * sr, up0 * cr - right0 * sr};
}

YawPitch LookAt(const Vec3& from, const Vec3& to) {
  const Vec3 d = to - from;
  const double horizontal = std::hypot(d.x, d.y);
  return {std::atan2(d.y, d.x), std::atan2(d.z, horizontal)};
}

}  // namespace viewscope
