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

#include "viewscope/baselines.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <stdexcept>
#include <tuple>

#include "viewscope/errors.h"
#include "viewscope/render.h"
#include "viewscope/tilt_prior.h"

namespace viewscope {

const char* BaselineName(BaselineKind kind) {
  switch (kind) {
    case BaselineKind::kRand: return "rand";
    case BaselineKind::kHum: return "hum";
    case BaselineKind::kCat: return "cat";
    case BaselineKind::kTraj: return "traj";
    case BaselineKind::kHeur: return "heur";
  }
  return "?";
}

BaselineKind ParseBaselineKind(const std::string& name) {
  for (BaselineKind k : {BaselineKind::kRand, BaselineKind::kHum,
                         BaselineKind::kCat, BaselineKind::kTraj,
                         BaselineKind::kHeur}) {
    if (name == BaselineName(k)) return k;
  }
  throw std::invalid_argument("unknown baseline '" + name +
                              "' (expected rand, hum, cat, traj or heur)");
}

void BaselineConfig::Validate() const {
  auto positive = [](double v, const char* what) {
    if (!(v > 0.0)) throw std::invalid_argument(std::string(what) + " must be > 0");
  };
  positive(eye_height, "eye_height");
  positive(heur_min_pixels, "heur_min_pixels");
  positive(grid_cell, "grid_cell");
  if (!(clearance >= 0.0)) throw std::invalid_argument("clearance must be >= 0");
  if (heur_directions < 1) throw std::invalid_argument("heur_directions must be >= 1");
  if (cat_ring_radii.empty()) throw std::invalid_argument("cat_ring_radii is empty");
  for (double r : cat_ring_radii) positive(r, "cat ring radius");
  if (cat_ring_angles < 1) throw std::invalid_argument("cat_ring_angles must be >= 1");
  if (views_total < 1) throw std::invalid_argument("views_total must be >= 1");
  if (score_width < 1 || score_height < 1) {
    throw std::invalid_argument("score resolution must be positive");
  }
  if (!(std::abs(heur_pitch) < TiltPrior::kMaxPitch)) {
    throw std::invalid_argument("heur_pitch must be within +-89 degrees");
  }
  if (rejection_budget < 1) throw std::invalid_argument("rejection_budget must be >= 1");
}

double HeurScore(std::span<const double> pixel_counts, double min_pixels) {
  if (!(min_pixels > 0.0)) throw std::invalid_argument("m must be > 0");
  // log(p / m) keeps p = e * m at exactly 1; summing sorted terms makes the
  // score independent of object order down to the last bit.
  std::vector<double> terms;
  for (const double p : pixel_counts) {
    if (p > min_pixels) terms.push_back(std::log(p / min_pixels));
  }
  std::sort(terms.begin(), terms.end());
  double s = 0.0;
  for (const double t : terms) s += t;
  return s;
}

namespace {

Camera MakeCamera(const Vec3& pos, double yaw, double pitch,
                  const BaselineConfig& cfg) {
  Camera cam;
  cam.position = pos;
  cam.yaw = yaw;
  cam.pitch = std::clamp(pitch, -TiltPrior::kMaxPitch, TiltPrior::kMaxPitch);
  cam.hfov = cfg.hfov;
  cam.aspect = cfg.aspect;
  return cam;
}

Camera AimedCamera(const Vec3& pos, const Vec3& target,
                   const BaselineConfig& cfg) {
  const Vec3 d = target - pos;
  if (std::hypot(d.x, d.y) < 1e-12) {
    return MakeCamera(pos, 0.0, d.z < 0 ? -TiltPrior::kMaxPitch
                                        : TiltPrior::kMaxPitch, cfg);
  }
  const YawPitch yp = LookAt(pos, target);
  return MakeCamera(pos, yp.yaw, yp.pitch, cfg);
}

// Point inside object geometry: non-structural objects by their hull,
// structural ones by their individual boxes (the shell hull spans the room).
bool InsideObjects(const Room& room, const CategoryTable& categories,
                   const Vec3& p) {
  for (const SceneObject& obj : room.objects) {
    if (categories.IsStructural(obj.category)) {
      for (const Box& b : obj.boxes) {
        if (b.Contains(p)) return true;
      }
    } else if (obj.Bounds().Contains(p)) {
      return true;
    }
  }
  return false;
}

// Uniform direction on the sphere, excluding the exact poles.
std::pair<double, double> UniformDirection(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (;;) {
    const double yaw = 2.0 * kPi * unit(rng);
    const double pitch = std::asin(2.0 * unit(rng) - 1.0);
    if (std::abs(pitch) < kPi / 2) return {yaw, pitch};
  }
}

void Renumber(BaselineViews& out) {
  for (size_t i = 0; i < out.views.size(); ++i) {
    out.views[i].id = static_cast<std::int64_t>(i);
  }
}

// Shared body of rand and hum; `fixed_height` pins z above the floor.
BaselineViews RandomViews(const Scene& scene, const BaselineConfig& cfg,
                          std::mt19937_64& rng,
                          std::optional<double> fixed_height) {
  cfg.Validate();
  BaselineViews out;
  std::vector<int> active;
  for (int r = 0; r < static_cast<int>(scene.rooms().size()); ++r) {
    const Room& room = scene.rooms()[r];
    if (fixed_height && !(room.bounds.min.z + *fixed_height < room.bounds.max.z)) {
      out.warnings.push_back("room '" + room.id +
                             "' skipped: ceiling below eye height");
      continue;
    }
    active.push_back(r);
  }
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  size_t turn = 0;
  while (static_cast<int>(out.views.size()) < cfg.views_total &&
         !active.empty()) {
    const size_t slot = turn % active.size();
    const Room& room = scene.rooms()[active[slot]];
    const Box& b = room.bounds;
    std::optional<Vec3> pos;
    for (int attempt = 0; attempt < cfg.rejection_budget; ++attempt) {
      Vec3 p{b.min.x + unit(rng) * (b.max.x - b.min.x),
             b.min.y + unit(rng) * (b.max.y - b.min.y),
             b.min.z + unit(rng) * (b.max.z - b.min.z)};
      if (fixed_height) p.z = b.min.z + *fixed_height;
      if (!InsideObjects(room, scene.categories(), p)) {
        pos = p;
        break;
      }
    }
    if (!pos) {
      out.warnings.push_back("room '" + room.id +
                             "' skipped: rejection budget exhausted");
      active.erase(active.begin() + static_cast<std::ptrdiff_t>(slot));
      continue;  // the next room takes this turn
    }
    const auto [yaw, pitch] = UniformDirection(rng);
    Candidate c;
    c.room = room.id;
    c.camera = MakeCamera(*pos, yaw, pitch, cfg);
    out.views.push_back(std::move(c));
    ++turn;
  }
  Renumber(out);
  return out;
}

}  // namespace

BaselineViews RandViews(const Scene& scene, const BaselineConfig& cfg,
                        std::mt19937_64& rng) {
  return RandomViews(scene, cfg, rng, std::nullopt);
}

BaselineViews HumViews(const Scene& scene, const BaselineConfig& cfg,
                       std::mt19937_64& rng) {
  return RandomViews(scene, cfg, rng, cfg.eye_height);
}

std::optional<RingView> BestRingView(const Scene& scene, int flat_object,
                                     const BaselineConfig& cfg) {
  const int room_index = scene.ObjectRoom(flat_object);
  const Room& room = scene.rooms()[room_index];
  const Vec3 centroid = scene.Object(flat_object).Bounds().Center();
  const double z = room.bounds.min.z + cfg.eye_height;
  if (!(z < room.bounds.max.z)) return std::nullopt;

  std::optional<RingView> best;
  for (int a = 0; a < cfg.cat_ring_angles; ++a) {
    const double theta = 2.0 * kPi * a / cfg.cat_ring_angles;
    for (int ri = 0; ri < static_cast<int>(cfg.cat_ring_radii.size()); ++ri) {
      const double r = cfg.cat_ring_radii[ri];
      const Vec3 pos{centroid.x + r * std::cos(theta),
                     centroid.y + r * std::sin(theta), z};
      if (!room.bounds.ContainsStrict(pos) ||
          InsideObjects(room, scene.categories(), pos)) {
        continue;
      }
      const Camera cam = AimedCamera(pos, centroid, cfg);
      const InstanceRender render = RenderViewWithInstances(
          scene, cam, cfg.score_width, cfg.score_height);
      const auto hits = std::count(render.object.begin(), render.object.end(),
                                   flat_object);
      const double fraction =
          static_cast<double>(hits) / static_cast<double>(render.object.size());
      // Angles are the outer loop, so strict improvement keeps the smaller
      // angle index on ties.
      if (fraction > 0.0 && (!best || fraction > best->fraction)) {
        best = RingView{cam, fraction, a, ri};
      }
    }
  }
  return best;
}

BaselineViews CatViews(const Scene& scene, const BaselineConfig& cfg,
                       std::mt19937_64& rng) {
  cfg.Validate();
  const CategoryTable& table = scene.categories();
  std::vector<std::vector<int>> objects_of(table.size());
  for (int o = 0; o < scene.object_count(); ++o) {
    const CategoryId c = scene.Object(o).category;
    if (!table.IsStructural(c)) objects_of[c].push_back(o);
  }
  std::vector<int> selectable;
  for (int c = 0; c < table.size(); ++c) {
    if (!objects_of[c].empty()) selectable.push_back(c);
  }
  if (selectable.empty()) {
    throw AlgorithmError("cat baseline: scene has no selectable object");
  }

  BaselineViews out;
  const int n = static_cast<int>(selectable.size());
  const int base = cfg.views_total / n;
  const int extra = cfg.views_total % n;
  std::vector<std::optional<std::optional<RingView>>> cache(scene.object_count());
  for (int i = 0; i < n; ++i) {
    const int c = selectable[i];
    const int budget = base + (i < extra ? 1 : 0);
    std::vector<int> pool = objects_of[c];
    for (int image = 0; image < budget && !pool.empty();) {
      std::uniform_int_distribution<size_t> pick(0, pool.size() - 1);
      const size_t slot = pick(rng);
      const int o = pool[slot];
      if (!cache[o]) cache[o] = BestRingView(scene, o, cfg);
      if (!*cache[o]) {
        // Never viewable from its ring; stop drawing it.
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(slot));
        continue;
      }
      Candidate view;
      view.room = scene.rooms()[scene.ObjectRoom(o)].id;
      view.camera = (*cache[o])->camera;
      out.views.push_back(std::move(view));
      ++image;
    }
    if (pool.empty()) {
      out.warnings.push_back("category '" + table.name(c) +
                             "': no object has a feasible ring view");
    }
  }
  Renumber(out);
  return out;
}

std::vector<int> GridDistances(const ObstructionGrid& grid, int source) {
  std::vector<int> dist(grid.obstructed.size(), -1);
  if (source < 0 || grid.obstructed[source]) return dist;
  std::deque<int> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    const int cur = queue.front();
    queue.pop_front();
    const int ix = cur % grid.nx;
    const int iy = cur / grid.nx;
    const int nbr[4][2] = {{ix - 1, iy}, {ix + 1, iy}, {ix, iy - 1}, {ix, iy + 1}};
    for (const auto& nb : nbr) {
      if (nb[0] < 0 || nb[0] >= grid.nx || nb[1] < 0 || nb[1] >= grid.ny) continue;
      const int next = grid.Index(nb[0], nb[1]);
      if (grid.obstructed[next] || dist[next] >= 0) continue;
      dist[next] = dist[cur] + 1;
      queue.push_back(next);
    }
  }
  return dist;
}

namespace {

int Farthest(const std::vector<int>& dist) {
  int best = -1;
  for (int i = 0; i < static_cast<int>(dist.size()); ++i) {
    if (dist[i] >= 0 && (best < 0 || dist[i] > dist[best])) best = i;
  }
  return best;
}

}  // namespace

std::optional<TrajectoryPlan> PlanTrajectory(const Scene& scene, int room_index,
                                             const BaselineConfig& cfg) {
  const Room& room = scene.rooms()[room_index];
  TrajectoryPlan plan;
  plan.grid = FreeGrid(room, scene.categories(), cfg.grid_cell, cfg.clearance);
  const ObstructionGrid& g = plan.grid;

  const Vec3 center = room.bounds.Center();
  double best_d = std::numeric_limits<double>::infinity();
  for (int iy = 0; iy < g.ny; ++iy) {
    for (int ix = 0; ix < g.nx; ++ix) {
      if (!g.IsFree(ix, iy)) continue;
      const double d = std::hypot(g.CenterX(ix) - center.x, g.CenterY(iy) - center.y);
      if (d < best_d) {
        best_d = d;
        plan.seed_cell = g.Index(ix, iy);
      }
    }
  }
  if (plan.seed_cell < 0) return std::nullopt;

  plan.start_cell = Farthest(GridDistances(g, plan.seed_cell));
  const std::vector<int> from_start = GridDistances(g, plan.start_cell);
  plan.end_cell = Farthest(from_start);
  if (plan.end_cell == plan.start_cell) return std::nullopt;

  // Walk back from the end along strictly decreasing distances, preferring
  // the lowest-index neighbour.
  std::vector<int> path{plan.end_cell};
  int cur = plan.end_cell;
  while (cur != plan.start_cell) {
    const int ix = cur % g.nx;
    const int iy = cur / g.nx;
    int next = -1;
    const int nbr[4][2] = {{ix, iy - 1}, {ix - 1, iy}, {ix + 1, iy}, {ix, iy + 1}};
    for (const auto& nb : nbr) {
      if (nb[0] < 0 || nb[0] >= g.nx || nb[1] < 0 || nb[1] >= g.ny) continue;
      const int cand = g.Index(nb[0], nb[1]);
      if (from_start[cand] == from_start[cur] - 1) {
        next = cand;
        break;
      }
    }
    path.push_back(next);
    cur = next;
  }
  std::reverse(path.begin(), path.end());
  plan.path = std::move(path);

  // Aim point: surface-area-weighted centroid of the furniture centroids.
  Vec3 sum{0, 0, 0};
  double weight = 0.0;
  for (const SceneObject& obj : room.objects) {
    if (scene.categories().IsStructural(obj.category)) continue;
    const double w = obj.SurfaceArea();
    sum = sum + obj.Bounds().Center() * w;
    weight += w;
  }
  plan.target = weight > 0.0 ? sum * (1.0 / weight)
                             : Vec3{center.x, center.y,
                                    room.bounds.min.z + cfg.eye_height};
  return plan;
}

BaselineViews TrajViews(const Scene& scene, const BaselineConfig& cfg,
                        std::mt19937_64& rng) {
  cfg.Validate();
  BaselineViews out;
  std::vector<Candidate> pool;
  for (int r = 0; r < static_cast<int>(scene.rooms().size()); ++r) {
    const Room& room = scene.rooms()[r];
    const double z = room.bounds.min.z + cfg.eye_height;
    if (!(z < room.bounds.max.z)) {
      out.warnings.push_back("room '" + room.id +
                             "' skipped: ceiling below eye height");
      continue;
    }
    std::optional<TrajectoryPlan> plan;
    try {
      plan = PlanTrajectory(scene, r, cfg);
    } catch (const std::invalid_argument&) {
      plan.reset();
    }
    if (!plan) {
      out.warnings.push_back("room '" + room.id +
                             "' skipped: free space too small for a walk");
      continue;
    }
    for (const int cell : plan->path) {
      const Vec3 pos{plan->grid.CenterX(cell % plan->grid.nx),
                     plan->grid.CenterY(cell / plan->grid.nx), z};
      Candidate c;
      c.room = room.id;
      c.camera = AimedCamera(pos, plan->target, cfg);
      pool.push_back(std::move(c));
    }
  }
  if (!pool.empty()) {
    std::shuffle(pool.begin(), pool.end(), rng);
    for (int i = 0; i < cfg.views_total; ++i) {
      out.views.push_back(pool[i % pool.size()]);
    }
    if (static_cast<int>(pool.size()) < cfg.views_total) {
      out.warnings.push_back("traj: only " + std::to_string(pool.size()) +
                             " path views; repeating to fill the budget");
    }
  }
  Renumber(out);
  return out;
}

BaselineViews HeurViews(const Scene& scene, const BaselineConfig& cfg) {
  cfg.Validate();
  BaselineViews out;
  struct Scored {
    double score;
    const std::string* room;
    int cell;
    int direction;
    Candidate view;
  };
  std::vector<Scored> scored;
  std::vector<double> counts(scene.object_count());
  for (int r = 0; r < static_cast<int>(scene.rooms().size()); ++r) {
    const Room& room = scene.rooms()[r];
    const double z = room.bounds.min.z + cfg.eye_height;
    if (!(z < room.bounds.max.z)) {
      out.warnings.push_back("room '" + room.id +
                             "' skipped: ceiling below eye height");
      continue;
    }
    ObstructionGrid g;
    try {
      g = FreeGrid(room, scene.categories(), cfg.grid_cell, cfg.clearance);
    } catch (const std::invalid_argument& e) {
      out.warnings.push_back("room '" + room.id + "' skipped: " + e.what());
      continue;
    }
    for (int iy = 0; iy < g.ny; ++iy) {
      for (int ix = 0; ix < g.nx; ++ix) {
        if (!g.IsFree(ix, iy)) continue;
        for (int d = 0; d < cfg.heur_directions; ++d) {
          const double yaw = 2.0 * kPi * d / cfg.heur_directions;
          Candidate view;
          view.room = room.id;
          view.camera = MakeCamera({g.CenterX(ix), g.CenterY(iy), z}, yaw,
                                   cfg.heur_pitch, cfg);
          const InstanceRender render = RenderViewWithInstances(
              scene, view.camera, cfg.score_width, cfg.score_height);
          std::fill(counts.begin(), counts.end(), 0.0);
          for (const int o : render.object) {
            if (o >= 0 && !scene.categories().IsStructural(scene.Object(o).category)) {
              counts[o] += 1.0;
            }
          }
          scored.push_back({HeurScore(counts, cfg.heur_min_pixels), &room.id,
                            g.Index(ix, iy), d, std::move(view)});
        }
      }
    }
  }
  const size_t take = std::min(scored.size(), static_cast<size_t>(cfg.views_total));
  std::partial_sort(scored.begin(), scored.begin() + take, scored.end(),
                    [](const Scored& a, const Scored& b) {
                      if (a.score != b.score) return a.score > b.score;
                      return std::tie(*a.room, a.cell, a.direction) <
                             std::tie(*b.room, b.cell, b.direction);
                    });
  for (size_t i = 0; i < take; ++i) out.views.push_back(std::move(scored[i].view));
  if (take < static_cast<size_t>(cfg.views_total)) {
    out.warnings.push_back("heur: only " + std::to_string(take) +
                           " grid views available");
  }
  Renumber(out);
  return out;
}

BaselineViews RunBaseline(BaselineKind kind, const Scene& scene,
                          const BaselineConfig& cfg) {
  std::mt19937_64 rng(cfg.seed ^ Fnv1a64(BaselineName(kind)));
  switch (kind) {
    case BaselineKind::kRand: return RandViews(scene, cfg, rng);
    case BaselineKind::kHum: return HumViews(scene, cfg, rng);
    case BaselineKind::kCat: return CatViews(scene, cfg, rng);
    case BaselineKind::kTraj: return TrajViews(scene, cfg, rng);
    case BaselineKind::kHeur: return HeurViews(scene, cfg);
  }
  throw std::invalid_argument("unknown baseline kind");
}

}  // namespace viewscope
