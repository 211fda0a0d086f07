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

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "test_util.h"
#include "viewscope/baselines.h"
#include "viewscope/errors.h"
#include "viewscope/render.h"

namespace viewscope {
namespace {

using testing::Cat;
using testing::Obj;
using testing::OneRoomScene;
using testing::ShellRoom;

const Box kRoom4{{0, 0, 0}, {4, 4, 2.5}};

BaselineConfig Cfg(int views) {
  BaselineConfig cfg;
  cfg.views_total = views;
  cfg.score_width = 40;
  cfg.score_height = 30;
  return cfg;
}

bool InsideAnyObject(const Room& room, const Vec3& p) {
  for (const SceneObject& o : room.objects) {
    for (const Box& b : o.boxes) {
      if (b.Contains(p)) return true;
    }
  }
  return false;
}

TEST(BaselineNamesTest, RoundTrip) {
  for (auto k : {BaselineKind::kRand, BaselineKind::kHum, BaselineKind::kCat,
                 BaselineKind::kTraj, BaselineKind::kHeur}) {
    EXPECT_EQ(ParseBaselineKind(BaselineName(k)), k);
  }
  EXPECT_THROW(ParseBaselineKind("nope"), std::invalid_argument);
}

// --- rand ---

TEST(RandTest, EmptyRoomAcceptsAnyInteriorPosition) {
  const Scene scene = OneRoomScene(kRoom4);
  std::mt19937_64 rng(1);
  const auto out = RandViews(scene, Cfg(500), rng);
  ASSERT_EQ(out.views.size(), 500u);
  Vec3 lo{9, 9, 9}, hi{-9, -9, -9};
  for (size_t i = 0; i < out.views.size(); ++i) {
    const Camera& c = out.views[i].camera;
    EXPECT_EQ(out.views[i].id, static_cast<std::int64_t>(i));
    EXPECT_TRUE(kRoom4.Contains(c.position));
    EXPECT_TRUE(c.IsValid());
    for (int a = 0; a < 3; ++a) {
      lo[a] = std::min(lo[a], c.position[a]);
      hi[a] = std::max(hi[a], c.position[a]);
    }
  }
  // Positions spread over the whole interior.
  EXPECT_LT(lo.x, 0.2);
  EXPECT_GT(hi.x, 3.8);
  EXPECT_LT(lo.z, 0.2);
  EXPECT_GT(hi.z, 2.3);
}

TEST(RandTest, HalfFreeRoomNeverInsideObjects) {
  const Scene scene = OneRoomScene(
      kRoom4, {Obj("bed", {{0, 0, 0}, {2, 4, 2.5}}),
               Obj("lamp", {{3, 3, 0}, {3.5, 3.5, 1.8}})});
  std::mt19937_64 rng(2);
  const auto out = RandViews(scene, Cfg(10000), rng);
  ASSERT_EQ(out.views.size(), 10000u);
  for (const Candidate& v : out.views) {
    ASSERT_FALSE(InsideAnyObject(scene.rooms()[0], v.camera.position));
    ASSERT_TRUE(kRoom4.Contains(v.camera.position));
  }
}

TEST(RandTest, PackedRoomSkippedWithWarning) {
  const Scene scene(CategoryTable::Nyu40(),
                    {ShellRoom("packed", kRoom4, {Obj("bed", kRoom4)}),
                     ShellRoom("open", {{5, 0, 0}, {8, 3, 2.5}})});
  std::mt19937_64 rng(3);
  BaselineConfig cfg = Cfg(20);
  cfg.rejection_budget = 50;
  const auto out = RandViews(scene, cfg, rng);
  ASSERT_FALSE(out.warnings.empty());
  for (const Candidate& v : out.views) EXPECT_EQ(v.room, "open");
  EXPECT_EQ(out.views.size(), 20u);
}

TEST(RandTest, DirectionsAreUniformOnTheSphere) {
  const Scene scene = OneRoomScene(kRoom4);
  std::mt19937_64 rng(4);
  const auto out = RandViews(scene, Cfg(20000), rng);
  double mean_sin_pitch = 0.0, cx = 0.0, cy = 0.0;
  for (const Candidate& v : out.views) {
    mean_sin_pitch += std::sin(v.camera.pitch);
    cx += std::cos(v.camera.yaw);
    cy += std::sin(v.camera.yaw);
  }
  const double n = out.views.size();
  // Uniform on the sphere: sin(pitch) is uniform on [-1, 1].
  EXPECT_NEAR(mean_sin_pitch / n, 0.0, 0.02);
  EXPECT_LT(std::hypot(cx, cy) / n, 0.03);
}

// --- hum ---

TEST(HumTest, EyeHeightAndUniformYaw) {
  const Scene scene(CategoryTable::Nyu40(),
                    {ShellRoom("a", {{0, 0, 0.5}, {4, 4, 3.0}},
                               {Obj("bed", {{0, 0, 0.5}, {2, 2, 1.0}})}),
                     ShellRoom("b", {{6, 0, 0}, {9, 3, 2.6}})});
  std::mt19937_64 rng(5);
  const auto out = HumViews(scene, Cfg(10000), rng);
  ASSERT_EQ(out.views.size(), 10000u);
  double cx = 0.0, cy = 0.0;
  for (const Candidate& v : out.views) {
    const Room& room = scene.rooms()[scene.RoomIndex(v.room)];
    EXPECT_DOUBLE_EQ(v.camera.position.z, room.bounds.min.z + 1.55);
    EXPECT_FALSE(InsideAnyObject(room, v.camera.position));
    cx += std::cos(v.camera.yaw);
    cy += std::sin(v.camera.yaw);
  }
  EXPECT_LT(std::hypot(cx, cy) / out.views.size(), 0.05);
}

TEST(HumTest, LowCeilingRoomSkipped) {
  const Scene scene(CategoryTable::Nyu40(),
                    {ShellRoom("low", {{0, 0, 0}, {3, 3, 1.4}}),
                     ShellRoom("ok", {{5, 0, 0}, {8, 3, 2.5}})});
  std::mt19937_64 rng(6);
  const auto out = HumViews(scene, Cfg(12), rng);
  EXPECT_FALSE(out.warnings.empty());
  EXPECT_EQ(out.views.size(), 12u);
  for (const Candidate& v : out.views) EXPECT_EQ(v.room, "ok");
}

// --- cat ---

int FlatObjectOf(const Scene& scene, CategoryId c) {
  for (int o = 0; o < scene.object_count(); ++o) {
    if (scene.Object(o).category == c) return o;
  }
  return -1;
}

TEST(CatTest, BestRingViewBeatsEveryRingPosition) {
  const Scene scene = OneRoomScene({{0, 0, 0}, {6, 6, 2.7}},
                                   {Obj("bed", {{2.2, 2.5, 0}, {3.8, 3.5, 0.6}})});
  const BaselineConfig cfg = Cfg(1);
  const int bed = FlatObjectOf(scene, Cat("bed"));
  const auto best = BestRingView(scene, bed, cfg);
  ASSERT_TRUE(best);
  const Vec3 centroid = scene.Object(bed).Bounds().Center();
  int feasible = 0;
  for (int a = 0; a < cfg.cat_ring_angles; ++a) {
    const double theta = 2.0 * M_PI * a / cfg.cat_ring_angles;
    for (double r : cfg.cat_ring_radii) {
      const Vec3 pos{centroid.x + r * std::cos(theta),
                     centroid.y + r * std::sin(theta), 1.55};
      if (scene.Object(bed).Bounds().Contains(pos)) continue;
      ++feasible;
      Camera cam;
      cam.position = pos;
      const YawPitch yp = LookAt(pos, centroid);
      cam.yaw = yp.yaw;
      cam.pitch = yp.pitch;
      cam.hfov = cfg.hfov;
      cam.aspect = cfg.aspect;
      const auto img = RenderViewWithInstances(scene, cam, cfg.score_width,
                                               cfg.score_height);
      const double frac =
          std::count(img.object.begin(), img.object.end(), bed) /
          static_cast<double>(img.object.size());
      EXPECT_GE(best->fraction, frac - 1e-12) << "angle " << a << " r " << r;
    }
  }
  EXPECT_EQ(feasible, 48);
}

TEST(CatTest, PositionsInsideWallsDiscarded) {
  // Dresser flush against the x = 0 wall: rings reaching x < 0 are invalid.
  const Scene scene = OneRoomScene(kRoom4, {Obj("dresser", {{0, 1.5, 0}, {0.5, 2.5, 1.0}})});
  const auto best = BestRingView(scene, FlatObjectOf(scene, Cat("dresser")), Cfg(1));
  ASSERT_TRUE(best);
  EXPECT_TRUE(kRoom4.ContainsStrict(best->camera.position));
  const double theta = 2.0 * M_PI * best->angle_index / 16;
  EXPECT_GT(std::cos(theta) * 0.75 + 0.25, 0.0);
}

TEST(CatTest, BudgetSplitsEquallyOverCategories) {
  const Scene scene = OneRoomScene(
      {{0, 0, 0}, {6, 6, 2.7}},
      {Obj("bed", {{1, 1, 0}, {2.5, 2, 0.6}}), Obj("lamp", {{4.5, 4.5, 0}, {4.8, 4.8, 1.6}})});
  const BaselineConfig cfg = Cfg(10);
  std::mt19937_64 rng(7);
  const auto out = CatViews(scene, cfg, rng);
  ASSERT_EQ(out.views.size(), 10u);
  const Camera bed = BestRingView(scene, FlatObjectOf(scene, Cat("bed")), cfg)->camera;
  const Camera lamp = BestRingView(scene, FlatObjectOf(scene, Cat("lamp")), cfg)->camera;
  int n_bed = 0, n_lamp = 0;
  for (const Candidate& v : out.views) {
    n_bed += v.camera == bed;
    n_lamp += v.camera == lamp;
  }
  EXPECT_EQ(n_bed, 5);
  EXPECT_EQ(n_lamp, 5);
}

TEST(CatTest, NoSelectableObjectsThrows) {
  std::mt19937_64 rng(8);
  EXPECT_THROW(CatViews(OneRoomScene(kRoom4), Cfg(4), rng), AlgorithmError);
}

// --- traj ---

TEST(TrajTest, EmptyRoomSpansTheDiameter) {
  const Scene scene = OneRoomScene({{0, 0, 0}, {5, 3, 2.5}});
  const auto plan = PlanTrajectory(scene, 0, Cfg(10));
  ASSERT_TRUE(plan);
  const auto& g = plan->grid;
  const auto dist = GridDistances(g, plan->start_cell);
  EXPECT_EQ(dist[plan->end_cell], (g.nx - 1) + (g.ny - 1));
  // Opposite corners.
  const int sx = plan->start_cell % g.nx, sy = plan->start_cell / g.nx;
  const int ex = plan->end_cell % g.nx, ey = plan->end_cell / g.nx;
  EXPECT_EQ(std::abs(sx - ex), g.nx - 1);
  EXPECT_EQ(std::abs(sy - ey), g.ny - 1);
  EXPECT_EQ(plan->path.size(), static_cast<size_t>(g.nx + g.ny - 1));
}

TEST(TrajTest, ViewsAimAtSingleObject) {
  const Scene scene = OneRoomScene({{0, 0, 0}, {6, 6, 2.7}},
                                   {Obj("table", {{2.6, 2.6, 0}, {3.4, 3.4, 0.75}})});
  const Vec3 target{3.0, 3.0, 0.375};
  BaselineConfig cfg = Cfg(30);
  std::mt19937_64 rng(9);
  const auto out = TrajViews(scene, cfg, rng);
  ASSERT_EQ(out.views.size(), 30u);
  for (const Candidate& v : out.views) {
    const Vec3 d = DirectionFromYawPitch(v.camera.yaw, v.camera.pitch);
    const Vec3 to = target - v.camera.position;
    const double bearing = std::atan2(to.y, to.x);
    const double err = std::remainder(std::atan2(d.y, d.x) - bearing, 2 * M_PI);
    const double tol = std::atan2(cfg.grid_cell, std::hypot(to.x, to.y));
    EXPECT_LT(std::abs(err), tol);
    EXPECT_DOUBLE_EQ(v.camera.position.z, 1.55);
  }
}

TEST(TrajTest, LShapedPathTurnsTheCorner) {
  // A block fills the (+x, +y) quadrant, leaving an L of free floor.
  const Scene scene = OneRoomScene({{0, 0, 0}, {6, 6, 2.7}},
                                   {Obj("bookshelf", {{2.5, 2.5, 0}, {6, 6, 2.0}})});
  const auto plan = PlanTrajectory(scene, 0, Cfg(10));
  ASSERT_TRUE(plan);
  const auto& g = plan->grid;
  const auto from_start = GridDistances(g, plan->start_cell);
  ASSERT_EQ(plan->path.front(), plan->start_cell);
  ASSERT_EQ(plan->path.back(), plan->end_cell);
  EXPECT_EQ(plan->path.size(), static_cast<size_t>(from_start[plan->end_cell] + 1));
  bool moved_x = false, moved_y = false;
  for (size_t i = 0; i < plan->path.size(); ++i) {
    EXPECT_FALSE(g.obstructed[plan->path[i]]);
    if (i == 0) continue;
    const int a = plan->path[i - 1], b = plan->path[i];
    const int dx = std::abs(a % g.nx - b % g.nx), dy = std::abs(a / g.nx - b / g.nx);
    EXPECT_EQ(dx + dy, 1);
    moved_x |= dx == 1;
    moved_y |= dy == 1;
  }
  EXPECT_TRUE(moved_x && moved_y);
}

TEST(TrajTest, DegenerateFreeSpaceSkipped) {
  const Scene scene = OneRoomScene(kRoom4, {Obj("bed", kRoom4)});
  EXPECT_FALSE(PlanTrajectory(scene, 0, Cfg(4)));
  std::mt19937_64 rng(10);
  const auto out = TrajViews(scene, Cfg(4), rng);
  EXPECT_TRUE(out.views.empty());
  EXPECT_FALSE(out.warnings.empty());
}

// --- heur ---

TEST(HeurTest, Formula) {
  const double m = 100.0;
  EXPECT_EQ(HeurScore(std::vector<double>{}, m), 0.0);
  EXPECT_EQ(HeurScore(std::vector<double>{10, 99, 100}, m), 0.0);
  EXPECT_DOUBLE_EQ(HeurScore(std::vector<double>{std::exp(1.0) * m}, m), 1.0);
  const std::vector<double> a{400, 50, 250, 1000}, b{1000, 250, 50, 400};
  EXPECT_EQ(HeurScore(a, m), HeurScore(b, m));
  // One object at 4m versus two at 2m: both score 2 log 2.
  EXPECT_NEAR(HeurScore(std::vector<double>{4 * m}, m), 2 * std::log(2.0), 1e-12);
  EXPECT_NEAR(HeurScore(std::vector<double>{2 * m, 2 * m}, m), std::log(4.0), 1e-12);
}

TEST(HeurTest, ViewsAreSortedAndDeterministic) {
  const Scene scene = OneRoomScene({{0, 0, 0}, {5, 4, 2.6}},
                                   {Obj("bed", {{0.2, 0.2, 0}, {2.2, 1.8, 0.6}}),
                                    Obj("desk", {{3.8, 3.0, 0}, {4.8, 3.8, 0.75}})});
  BaselineConfig cfg = Cfg(6);
  cfg.heur_min_pixels = 20;
  const auto a = HeurViews(scene, cfg);
  const auto b = HeurViews(scene, cfg);
  ASSERT_EQ(a.views.size(), 6u);
  for (size_t i = 0; i < a.views.size(); ++i) {
    EXPECT_EQ(a.views[i], b.views[i]);
    EXPECT_NEAR(a.views[i].camera.pitch, cfg.heur_pitch, 1e-12);
  }
}

TEST(RunBaselineTest, SeededPerKind) {
  const Scene scene = OneRoomScene(kRoom4, {Obj("bed", {{1, 1, 0}, {2, 3, 0.6}})});
  BaselineConfig cfg = Cfg(5);
  cfg.seed = 99;
  for (auto k : {BaselineKind::kRand, BaselineKind::kHum, BaselineKind::kCat,
                 BaselineKind::kTraj}) {
    EXPECT_EQ(RunBaseline(k, scene, cfg).views, RunBaseline(k, scene, cfg).views);
  }
  const auto r = RunBaseline(BaselineKind::kRand, scene, cfg).views;
  cfg.seed = 100;
  EXPECT_NE(RunBaseline(BaselineKind::kRand, scene, cfg).views, r);
}

}  // namespace
}  // namespace viewscope
