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

#ifndef VIEWSCOPE_GEOMETRY_H_
#define VIEWSCOPE_GEOMETRY_H_

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

namespace viewscope {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double operator[](int axis) const {
    return axis == 0 ? x : (axis == 1 ? y : z);
  }
  double& operator[](int axis) { return axis == 0 ? x : (axis == 1 ? y : z); }

  friend Vec3 operator+(const Vec3& a, const Vec3& b) {
    return {a.x + b.x, a.y + b.y, a.z + b.z};
  }
  friend Vec3 operator-(const Vec3& a, const Vec3& b) {
    return {a.x - b.x, a.y - b.y, a.z - b.z};
  }
  friend Vec3 operator*(const Vec3& a, double s) {
    return {a.x * s, a.y * s, a.z * s};
  }
  friend Vec3 operator*(double s, const Vec3& a) { return a * s; }
  friend bool operator==(const Vec3&, const Vec3&) = default;
};

inline double Dot(const Vec3& a, const Vec3& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

inline Vec3 Cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z,
          a.x * b.y - a.y * b.x};
}

inline double Norm(const Vec3& a) { return std::sqrt(Dot(a, a)); }

inline Vec3 Normalized(const Vec3& a) { return a * (1.0 / Norm(a)); }

// Closed axis-aligned box in meters.
struct Box {
  Vec3 min;
  Vec3 max;

  Vec3 Center() const { return (min + max) * 0.5; }
  Vec3 Extent() const { return max - min; }
  double Volume() const {
    const Vec3 e = Extent();
    return e.x * e.y * e.z;
  }
  double SurfaceArea() const {
    const Vec3 e = Extent();
    return 2.0 * (e.x * e.y + e.y * e.z + e.z * e.x);
  }
  bool HasPositiveExtent() const {
    return min.x < max.x && min.y < max.y && min.z < max.z;
  }
  bool Contains(const Vec3& p) const {
    return p.x >= min.x && p.x <= max.x && p.y >= min.y && p.y <= max.y &&
           p.z >= min.z && p.z <= max.z;
  }
  // Strict interior test; points on a face are not inside.
  bool ContainsStrict(const Vec3& p) const {
    return p.x > min.x && p.x < max.x && p.y > min.y && p.y < max.y &&
           p.z > min.z && p.z < max.z;
  }
  bool ContainsBox(const Box& other) const {
    return Contains(other.min) && Contains(other.max);
  }
  bool Overlaps(const Box& other) const {
    return min.x < other.max.x && other.min.x < max.x &&
           min.y < other.max.y && other.min.y < max.y &&
           min.z < other.max.z && other.min.z < max.z;
  }
  Box Expanded(double margin) const {
    const Vec3 m{margin, margin, margin};
    return {min - m, max + m};
  }
  void ExtendBy(const Box& other) {
    min = {std::min(min.x, other.min.x), std::min(min.y, other.min.y),
           std::min(min.z, other.min.z)};
    max = {std::max(max.x, other.max.x), std::max(max.y, other.max.y),
           std::max(max.z, other.max.z)};
  }
  friend bool operator==(const Box&, const Box&) = default;
};

// Parametric interval [t_near, t_far] where the ray overlaps the box.
struct SlabInterval {
  double t_near;
  double t_far;
};

// Slab test. `inv_dir` holds 1/direction per axis (infinite for zero
// components). Returns nullopt when the ray line misses the box.
inline std::optional<SlabInterval> IntersectSlabs(const Box& box,
                                                  const Vec3& origin,
                                                  const Vec3& inv_dir) {
  double t_near = -std::numeric_limits<double>::infinity();
  double t_far = std::numeric_limits<double>::infinity();
  for (int axis = 0; axis < 3; ++axis) {
    const double o = origin[axis];
    const double inv = inv_dir[axis];
    if (std::isinf(inv)) {
      // Parallel to this slab pair.
      if (o < box.min[axis] || o > box.max[axis]) return std::nullopt;
      continue;
    }
    double t0 = (box.min[axis] - o) * inv;
    double t1 = (box.max[axis] - o) * inv;
    if (t0 > t1) std::swap(t0, t1);
    t_near = std::max(t_near, t0);
    t_far = std::min(t_far, t1);
    if (t_near > t_far) return std::nullopt;
  }
  return SlabInterval{t_near, t_far};
}

inline Vec3 InverseDirection(const Vec3& d) {
  const double inf = std::numeric_limits<double>::infinity();
  return {d.x == 0.0 ? inf : 1.0 / d.x, d.y == 0.0 ? inf : 1.0 / d.y,
          d.z == 0.0 ? inf : 1.0 / d.z};
}

// Euclidean distance from a point to a (closed) box; zero inside.
inline double PointBoxDistance(const Vec3& p, const Box& b) {
  const double dx = std::max({b.min.x - p.x, 0.0, p.x - b.max.x});
  const double dy = std::max({b.min.y - p.y, 0.0, p.y - b.max.y});
  const double dz = std::max({b.min.z - p.z, 0.0, p.z - b.max.z});
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

inline constexpr double kPi = 3.14159265358979323846;

inline constexpr double DegToRad(double deg) { return deg * kPi / 180.0; }
inline constexpr double RadToDeg(double rad) { return rad * 180.0 / kPi; }

}  // namespace viewscope

#endif  // VIEWSCOPE_GEOMETRY_H_
