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

#include "viewscope/candidate_gen.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "viewscope/errors.h"

namespace viewscope {

void GenConfig::Validate() const {
  if (target_voxels < 1 || rays_per_voxel < 1 || candidates_per_room < 1 ||
      keep_per_room < 1 || score_width < 1 || score_height < 1 ||
      max_eye_retries < 1) {
    throw std::invalid_argument("generation counts must be >= 1");
  }
  if (keep_per_room > candidates_per_room) {
    throw std::invalid_argument("keep_per_room must not exceed "
                                "candidates_per_room");
  }
  if (!(hfov > 0.0 && hfov < kPi) || !(aspect > 0.0)) {
    throw std::invalid_argument("invalid field of view or aspect");
  }
}

int GenConfig::ClampedTargetVoxels() const {
  return std::clamp(target_voxels, kMinVoxels, kMaxVoxels);
}

Vec3 VoxelGrid::CellSize() const {
  const Vec3 e = bounds.Extent();
  return {e.x / nx, e.y / ny, e.z / nz};
}

Box VoxelGrid::VoxelBox(int v) const {
  const int ix = v % nx;
  const int iy = (v / nx) % ny;
  const int iz = v / (nx * ny);
  const Vec3 s = CellSize();
  const Vec3 lo{bounds.min.x + ix * s.x, bounds.min.y + iy * s.y,
                bounds.min.z + iz * s.z};
  return {lo, lo + s};
}

VoxelGrid MakeVoxelGrid(const Box& bounds, int target) {
  const Vec3 e = bounds.Extent();
  const double edge = std::cbrt(bounds.Volume() / std::max(target, 1));
  VoxelGrid g;
  g.bounds = bounds;
  g.nx = std::max(1, static_cast<int>(std::lround(e.x / edge)));
  g.ny = std::max(1, static_cast<int>(std::lround(e.y / edge)));
  g.nz = std::max(1, static_cast<int>(std::lround(e.z / edge)));
  return g;
}

double VoxelWeights::Total() const {
  return std::accumulate(weight.begin(), weight.end(), 0.0);
}

namespace {

Vec3 UniformIn(const Box& box, Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const Vec3 e = box.Extent();
  const double x = u(rng);
  const double y = u(rng);
  const double z = u(rng);
  return {box.min.x + e.x * x, box.min.y + e.y * y, box.min.z + e.z * z};
}

double UniformYaw(Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 2.0 * kPi);
  return u(rng);
}

bool InsideAnyBox(const Scene& scene, int room, const Vec3& p) {
  for (int b = scene.RoomBoxBegin(room); b < scene.RoomBoxEnd(room); ++b) {
    if (scene.boxes()[b].box.Contains(p)) return true;
  }
  return false;
}

}  // namespace

VoxelWeights WeightVoxels(const Scene& scene, int room, const VoxelGrid& grid,
                          const CategoryPdfSet& pdfs,
                          const CategoryWeights& weights,
                          const TiltPrior& tilt, const GenConfig& cfg,
                          Rng& rng) {
  const int n = scene.categories().size();
  if (pdfs.num_categories() != n || weights.size() != n) {
    throw std::invalid_argument("pdfs, weights and scene disagree on the "
                                "category count");
  }
  VoxelWeights vw;
  vw.room_id = scene.rooms()[room].id;
  vw.grid = grid;
  vw.num_categories = n;
  vw.scope = cfg.hit_count_scope;
  const int voxels = grid.count();
  if (cfg.uniform_voxel_weights) {
    vw.uniform = true;
    vw.weight.assign(voxels, 1.0);
    return vw;
  }
  vw.category_sums.assign(static_cast<size_t>(voxels) * n, 0.0);
  const bool per_voxel = cfg.hit_count_scope == HitCountScope::kVoxel;
  vw.hit_counts.assign(per_voxel ? static_cast<size_t>(voxels) * n : n, 0);

  for (int v = 0; v < voxels; ++v) {
    const Box cell = grid.VoxelBox(v);
    double* sums = vw.category_sums.data() + static_cast<size_t>(v) * n;
    std::int64_t* counts =
        vw.hit_counts.data() + (per_voxel ? static_cast<size_t>(v) * n : 0);
    for (int i = 0; i < cfg.rays_per_voxel; ++i) {
      const Vec3 origin = UniformIn(cell, rng);
      const double yaw = UniformYaw(rng);
      const double pitch = tilt.SamplePitch(rng);
      const auto hit =
          RayIntersect(scene, origin, DirectionFromYawPitch(yaw, pitch));
      if (!hit) continue;
      sums[hit->category] += pdfs.DepthMarginal(hit->category, hit->distance);
      ++counts[hit->category];
    }
  }

  vw.weight.assign(voxels, 0.0);
  for (int v = 0; v < voxels; ++v) {
    const double* sums = vw.category_sums.data() + static_cast<size_t>(v) * n;
    const std::int64_t* counts =
        vw.hit_counts.data() + (per_voxel ? static_cast<size_t>(v) * n : 0);
    double total = 0.0;
    for (int c = 0; c < n; ++c) {
      // An unhit category has a zero sum; 0/0 contributes nothing.
      if (counts[c] == 0) continue;
      total += weights[c] / static_cast<double>(counts[c]) * sums[c];
    }
    vw.weight[v] = total;
  }
  return vw;
}

std::vector<Camera> SampleCandidates(const Scene& scene, int room,
                                     const VoxelWeights& vw,
                                     const TiltPrior& tilt,
                                     const GenConfig& cfg, Rng& rng) {
  if (!vw.uniform && vw.AllZero()) {
    throw AlgorithmError("room '" + vw.room_id +
                         "': every voxel weight is zero");
  }
  std::discrete_distribution<int> pick_voxel(vw.weight.begin(),
                                             vw.weight.end());
  std::vector<Camera> cameras;
  cameras.reserve(cfg.candidates_per_room);
  for (int i = 0; i < cfg.candidates_per_room; ++i) {
    bool placed = false;
    for (int attempt = 0; attempt < cfg.max_eye_retries; ++attempt) {
      const int v = pick_voxel(rng);
      const Vec3 eye = UniformIn(vw.grid.VoxelBox(v), rng);
      if (InsideAnyBox(scene, room, eye)) continue;
      Camera cam;
      cam.position = eye;
      cam.yaw = UniformYaw(rng);
      cam.pitch = tilt.SamplePitch(rng);
      cam.roll = tilt.SampleRoll(rng);
      cam.hfov = cfg.hfov;
      cam.aspect = cfg.aspect;
      cameras.push_back(cam);
      placed = true;
      break;
    }
    if (!placed) {
      throw AlgorithmError("room '" + vw.room_id + "': no free eye position "
                           "after " + std::to_string(cfg.max_eye_retries) +
                           " attempts");
    }
  }
  return cameras;
}

ImageScore ScoreCandidate(const SemanticDepthImage& image,
                          const CategoryPdfSet& pdfs,
                          const CategoryWeights& weights,
                          bool divide_by_observation_frequency) {
  const int n = pdfs.num_categories();
  std::vector<double> sums(n, 0.0);
  std::vector<std::int64_t> counts(n, 0);
  ImageScore out;
  for (int y = 0; y < image.height; ++y) {
    const double ny = static_cast<double>(y) / image.height;
    for (int x = 0; x < image.width; ++x) {
      const size_t idx = image.Index(x, y);
      const int c = image.category[idx];
      if (c == kBackground || c >= n) continue;
      const double f = pdfs.Likelihood(
          c, static_cast<double>(x) / image.width, ny, image.depth[idx]);
      sums[c] += f;
      ++counts[c];
      out.whole_image += f;
    }
  }
  out.per_category.assign(n, 0.0);
  for (int c = 0; c < n; ++c) {
    if (counts[c] == 0) continue;
    out.per_category[c] =
        divide_by_observation_frequency
            ? weights[c] * sums[c] / static_cast<double>(counts[c])
            : weights[c] * sums[c];
  }
  for (const double v : out.per_category) out.aggregate += v;
  return out;
}

std::vector<Candidate> FilterTop(std::vector<Candidate> candidates, int keep) {
  std::sort(candidates.begin(), candidates.end(),
            [](const Candidate& a, const Candidate& b) {
              if (a.aggregate != b.aggregate) return a.aggregate > b.aggregate;
              return a.id < b.id;
            });
  if (keep >= 0 && static_cast<size_t>(keep) < candidates.size()) {
    candidates.resize(keep);
  }
  return candidates;
}

std::uint64_t RoomSeed(std::uint64_t seed, const std::string& room_id) {
  return seed ^ Fnv1a64(room_id);
}

RoomCandidates GenerateRoom(const Scene& scene, int room,
                            const CategoryPdfSet& pdfs,
                            const CategoryWeights& weights,
                            const TiltPrior& tilt, const GenConfig& cfg) {
  cfg.Validate();
  const Room& r = scene.rooms()[room];
  RoomCandidates out;
  out.room_id = r.id;
  Rng rng(RoomSeed(cfg.seed, r.id));
  const VoxelGrid grid = MakeVoxelGrid(r.bounds, cfg.ClampedTargetVoxels());
  const VoxelWeights vw =
      WeightVoxels(scene, room, grid, pdfs, weights, tilt, cfg, rng);
  if (!vw.uniform && vw.AllZero()) {
    out.zero_weight = true;
    return out;
  }
  const std::vector<Camera> cameras =
      SampleCandidates(scene, room, vw, tilt, cfg, rng);
  std::vector<Candidate> candidates;
  candidates.reserve(cameras.size());
  for (size_t i = 0; i < cameras.size(); ++i) {
    const SemanticDepthImage img =
        RenderView(scene, cameras[i], cfg.score_width, cfg.score_height);
    ImageScore score = ScoreCandidate(img, pdfs, weights,
                                      cfg.divide_by_observation_frequency);
    Candidate c;
    c.id = static_cast<std::int64_t>(room) * cfg.candidates_per_room +
           static_cast<std::int64_t>(i);
    c.room = r.id;
    c.camera = cameras[i];
    c.scores = std::move(score.per_category);
    c.aggregate = score.aggregate;
    c.whole_image = score.whole_image;
    candidates.push_back(std::move(c));
  }
  out.candidates = FilterTop(std::move(candidates), cfg.keep_per_room);
  return out;
}

std::vector<RoomCandidates> GenerateAll(const Scene& scene,
                                        const CategoryPdfSet& pdfs,
                                        const CategoryWeights& weights,
                                        const TiltPrior& tilt,
                                        const GenConfig& cfg, int workers) {
  const int rooms = static_cast<int>(scene.rooms().size());
  std::vector<RoomCandidates> results(rooms);
  std::atomic<int> next{0};
  // Per-room failures; the lowest failing room is reported so the error does
  // not depend on scheduling.
  std::vector<std::exception_ptr> failures(rooms);
  auto work = [&] {
    for (;;) {
      const int r = next.fetch_add(1);
      if (r >= rooms) return;
      try {
        results[r] = GenerateRoom(scene, r, pdfs, weights, tilt, cfg);
      } catch (...) {
        failures[r] = std::current_exception();
      }
    }
  };
  const int threads = std::clamp(workers, 1, std::max(rooms, 1));
  if (threads == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }
  for (const std::exception_ptr& f : failures) {
    if (f) std::rethrow_exception(f);
  }
  return results;
}

}  // namespace viewscope
