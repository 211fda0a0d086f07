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

#include "viewscope/suite.h"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "viewscope/errors.h"
#include "viewscope/render.h"

namespace viewscope {

namespace {

enum class Place { kWall, kFree, kBeside, kOnTop, kMounted };
enum class Shape { kBlock, kTable, kChair };

struct Range {
  double lo, hi;
};

// One furniture template line. `w` runs along the supporting wall (or x for
// free-standing items), `d` away from it.
struct Item {
  const char* category;
  Range w, d, h;
  Place place;
  int parent = -1;  // template index for kBeside / kOnTop
  double prob = 1.0;
  int count_min = 1;
  int count_max = 1;
  Range elev{0.0, 0.0};  // bottom height for kMounted
  Shape shape = Shape::kBlock;
};

struct RoomType {
  const char* name;
  Range area;
  std::vector<Item> items;
};

const std::vector<RoomType>& RoomTypes() {
  static const std::vector<RoomType> types = {
      {"bedroom",
       {10, 20},
       {{"bed", {1.4, 2.0}, {2.0, 2.1}, {0.5, 0.6}, Place::kWall},
        {"pillow", {0.5, 0.7}, {0.35, 0.45}, {0.12, 0.18}, Place::kOnTop, 0, 1, 1, 2},
        {"night_stand", {0.4, 0.5}, {0.4, 0.45}, {0.5, 0.6}, Place::kBeside, 0, 1, 1, 2},
        {"lamp", {0.2, 0.3}, {0.2, 0.3}, {0.35, 0.5}, Place::kOnTop, 2, 0.8},
        {"dresser", {0.9, 1.4}, {0.45, 0.55}, {0.8, 1.0}, Place::kWall},
        {"window", {1.0, 1.6}, {0.05, 0.05}, {1.2, 1.5}, Place::kMounted, -1, 1, 1, 1, {0.8, 1.0}},
        {"door", {0.8, 0.9}, {0.05, 0.05}, {2.0, 2.1}, Place::kMounted},
        {"picture", {0.4, 0.9}, {0.03, 0.03}, {0.3, 0.7}, Place::kMounted, -1, 0.7, 1, 1, {1.3, 1.6}},
        {"curtain", {0.3, 0.5}, {0.1, 0.1}, {2.0, 2.2}, Place::kMounted, -1, 0.5, 1, 1, {0.2, 0.2}},
        {"floor_mat", {1.0, 1.8}, {0.7, 1.2}, {0.01, 0.02}, Place::kFree, -1, 0.6},
        {"clothes", {0.4, 0.6}, {0.3, 0.5}, {0.1, 0.3}, Place::kOnTop, 4, 0.4},
        {"mirror", {0.5, 0.6}, {0.03, 0.03}, {0.8, 1.0}, Place::kMounted, -1, 0.3, 1, 1, {1.0, 1.1}}}},
      {"living",
       {18, 40},
       {{"sofa", {1.8, 2.4}, {0.85, 1.0}, {0.8, 0.9}, Place::kWall},
        {"pillow", {0.4, 0.5}, {0.15, 0.2}, {0.4, 0.5}, Place::kOnTop, 0, 1, 1, 3},
        {"table", {0.9, 1.3}, {0.5, 0.7}, {0.4, 0.5}, Place::kFree, -1, 1, 1, 1, {0, 0}, Shape::kTable},
        {"cabinet", {1.2, 1.8}, {0.4, 0.5}, {0.5, 0.7}, Place::kWall},
        {"television", {0.9, 1.4}, {0.08, 0.12}, {0.55, 0.8}, Place::kOnTop, 3},
        {"chair", {0.6, 0.8}, {0.6, 0.8}, {0.8, 1.0}, Place::kFree, -1, 1, 1, 2, {0, 0}, Shape::kChair},
        {"bookshelf", {0.8, 1.2}, {0.3, 0.4}, {1.6, 2.0}, Place::kWall, -1, 0.8},
        {"books", {0.3, 0.6}, {0.2, 0.3}, {0.2, 0.3}, Place::kOnTop, 6, 0.5},
        {"lamp", {0.3, 0.4}, {0.3, 0.4}, {1.4, 1.7}, Place::kFree, -1, 0.6},
        {"window", {1.2, 2.0}, {0.05, 0.05}, {1.2, 1.6}, Place::kMounted, -1, 1, 1, 2, {0.8, 1.0}},
        {"door", {0.8, 0.9}, {0.05, 0.05}, {2.0, 2.1}, Place::kMounted},
        {"picture", {0.5, 1.0}, {0.03, 0.03}, {0.4, 0.8}, Place::kMounted, -1, 0.8, 1, 2, {1.3, 1.6}},
        {"floor_mat", {1.4, 2.2}, {1.0, 1.6}, {0.01, 0.02}, Place::kFree, -1, 0.5},
        {"curtain", {0.3, 0.5}, {0.1, 0.1}, {2.0, 2.2}, Place::kMounted, -1, 0.6, 1, 1, {0.2, 0.2}}}},
      {"kitchen",
       {8, 16},
       {{"counter", {1.8, 3.0}, {0.6, 0.6}, {0.88, 0.92}, Place::kWall},
        {"sink", {0.5, 0.7}, {0.4, 0.5}, {0.15, 0.2}, Place::kOnTop, 0},
        {"cabinet", {1.5, 2.5}, {0.35, 0.35}, {0.7, 0.7}, Place::kMounted, -1, 0.9, 1, 1, {1.45, 1.55}},
        {"refridgerator", {0.7, 0.8}, {0.7, 0.7}, {1.7, 1.9}, Place::kWall},
        {"table", {0.9, 1.4}, {0.7, 0.9}, {0.72, 0.76}, Place::kFree, -1, 1, 1, 1, {0, 0}, Shape::kTable},
        {"chair", {0.42, 0.48}, {0.42, 0.48}, {0.85, 0.95}, Place::kBeside, 4, 1, 2, 4, {0, 0}, Shape::kChair},
        {"window", {0.8, 1.4}, {0.05, 0.05}, {1.0, 1.3}, Place::kMounted, -1, 1, 1, 1, {1.0, 1.1}},
        {"door", {0.8, 0.9}, {0.05, 0.05}, {2.0, 2.1}, Place::kMounted},
        {"otherprop", {0.2, 0.4}, {0.2, 0.3}, {0.2, 0.35}, Place::kOnTop, 0, 0.7},
        {"box", {0.3, 0.5}, {0.3, 0.5}, {0.3, 0.5}, Place::kFree, -1, 0.3}}},
      {"office",
       {8, 14},
       {{"desk", {1.2, 1.6}, {0.6, 0.8}, {0.72, 0.76}, Place::kWall, -1, 1, 1, 1, {0, 0}, Shape::kTable},
        {"chair", {0.5, 0.6}, {0.5, 0.6}, {0.9, 1.1}, Place::kBeside, 0, 1, 1, 1, {0, 0}, Shape::kChair},
        {"lamp", {0.15, 0.25}, {0.15, 0.25}, {0.35, 0.5}, Place::kOnTop, 0, 0.7},
        {"bookshelf", {0.8, 1.2}, {0.3, 0.4}, {1.6, 2.0}, Place::kWall},
        {"books", {0.3, 0.6}, {0.2, 0.3}, {0.2, 0.3}, Place::kOnTop, 3, 0.6},
        {"cabinet", {0.4, 0.6}, {0.5, 0.6}, {0.6, 1.3}, Place::kWall},
        {"shelves", {0.8, 1.2}, {0.25, 0.3}, {0.03, 0.05}, Place::kMounted, -1, 0.6, 1, 1, {1.5, 1.8}},
        {"window", {1.0, 1.6}, {0.05, 0.05}, {1.2, 1.5}, Place::kMounted, -1, 1, 1, 1, {0.8, 1.0}},
        {"door", {0.8, 0.9}, {0.05, 0.05}, {2.0, 2.1}, Place::kMounted},
        {"whiteboard", {1.2, 1.8}, {0.03, 0.03}, {0.9, 1.2}, Place::kMounted, -1, 0.5, 1, 1, {0.9, 1.0}},
        {"box", {0.3, 0.5}, {0.3, 0.5}, {0.3, 0.5}, Place::kFree, -1, 0.5},
        {"television", {0.5, 0.6}, {0.15, 0.15}, {0.35, 0.45}, Place::kOnTop, 0, 0.8}}},
      {"bathroom",
       {8, 11},
       {{"bathtub", {1.5, 1.7}, {0.7, 0.8}, {0.5, 0.6}, Place::kWall},
        {"toilet", {0.4, 0.45}, {0.65, 0.75}, {0.75, 0.8}, Place::kWall},
        {"cabinet", {0.6, 0.9}, {0.45, 0.55}, {0.8, 0.85}, Place::kWall},
        {"sink", {0.45, 0.55}, {0.35, 0.45}, {0.12, 0.18}, Place::kOnTop, 2},
        {"mirror", {0.6, 0.8}, {0.03, 0.03}, {0.8, 1.0}, Place::kMounted, -1, 1, 1, 1, {1.1, 1.2}},
        {"towel", {0.4, 0.6}, {0.05, 0.05}, {0.5, 0.7}, Place::kMounted, -1, 1, 1, 2, {0.9, 1.2}},
        {"shower_curtain", {1.0, 1.4}, {0.03, 0.03}, {1.8, 1.8}, Place::kMounted, -1, 0.6, 1, 1, {0.3, 0.3}},
        {"door", {0.8, 0.9}, {0.05, 0.05}, {2.0, 2.1}, Place::kMounted},
        {"floor_mat", {0.6, 0.9}, {0.4, 0.6}, {0.01, 0.02}, Place::kFree, -1, 0.7},
        {"otherprop", {0.1, 0.2}, {0.1, 0.2}, {0.15, 0.25}, Place::kOnTop, 2, 0.6}}},
  };
  return types;
}

const RoomType& FindType(const std::string& name) {
  for (const RoomType& t : RoomTypes()) {
    if (name == t.name) return t;
  }
  throw std::logic_error("unknown room type " + name);
}

std::vector<std::string> PresetRooms(const std::string& preset) {
  if (preset == "small") {
    return {"bedroom", "living", "kitchen", "office", "bathroom"};
  }
  if (preset == "medium") {
    return {"living",  "kitchen", "bedroom",  "bedroom", "bedroom", "office",
            "office",  "bathroom", "bathroom", "living", "kitchen", "bedroom"};
  }
  throw std::invalid_argument("unknown suite preset '" + preset +
                              "' (expected small or medium)");
}

double Round2(double v) { return std::round(v * 100.0) / 100.0; }

double Uniform(std::mt19937_64& rng, Range r) {
  return std::uniform_real_distribution<double>(r.lo, r.hi)(rng);
}

// Boxes of one piece of furniture occupying `b` (its hull).
std::vector<Box> ShapeBoxes(const Box& b, Shape shape) {
  const Vec3 e = b.Extent();
  switch (shape) {
    case Shape::kBlock:
      return {b};
    case Shape::kTable: {
      const double top = std::min(0.05, e.z * 0.2);
      const Vec3 c = b.Center();
      const double px = e.x * 0.15, py = e.y * 0.15;
      return {Box{{b.min.x, b.min.y, b.max.z - top}, b.max},
              Box{{c.x - px, c.y - py, b.min.z}, {c.x + px, c.y + py, b.max.z - top}}};
    }
    case Shape::kChair: {
      const double seat = std::min(0.45, e.z * 0.5);
      const double back = std::min(0.08, e.y * 0.2);
      return {Box{b.min, {b.max.x, b.max.y, b.min.z + seat}},
              Box{{b.min.x, b.max.y - back, b.min.z + seat}, b.max}};
    }
  }
  return {b};
}

bool Overlaps2D(const Box& a, const Box& b, double margin) {
  return a.min.x < b.max.x + margin && b.min.x < a.max.x + margin &&
         a.min.y < b.max.y + margin && b.min.y < a.max.y + margin;
}

struct Placed {
  Box hull;
  Place place;
  int template_index;
};

class RoomFurnisher {
 public:
  RoomFurnisher(const Box& interior, const CategoryTable& table,
                std::mt19937_64& rng)
      : in_(interior), table_(table), rng_(rng) {}

  std::vector<SceneObject> Furnish(const RoomType& type) {
    for (int t = 0; t < static_cast<int>(type.items.size()); ++t) {
      const Item& item = type.items[t];
      if (std::uniform_real_distribution<double>(0, 1)(rng_) >= item.prob) continue;
      const int count = std::uniform_int_distribution<int>(item.count_min,
                                                           item.count_max)(rng_);
      for (int k = 0; k < count; ++k) {
        for (int attempt = 0; attempt < 40; ++attempt) {
          std::optional<Box> hull = Propose(item);
          if (hull && Fits(*hull, item.place)) {
            placed_.push_back({*hull, item.place, t});
            const std::optional<CategoryId> c = table_.Find(item.category);
            if (!c) throw std::logic_error(std::string("no category ") + item.category);
            objects_.push_back({*c, ShapeBoxes(*hull, item.shape)});
            break;
          }
        }
      }
    }
    return objects_;
  }

 private:
  std::optional<Box> Parent(int template_index) {
    std::vector<const Placed*> options;
    for (const Placed& p : placed_) {
      if (p.template_index == template_index) options.push_back(&p);
    }
    if (options.empty()) return std::nullopt;
    return options[std::uniform_int_distribution<size_t>(0, options.size() - 1)(rng_)]->hull;
  }

  // Footprint of size w (along the wall) x d against wall `side`, starting
  // at fraction u of the free length; bottom at z0, height h.
  Box AgainstWall(int side, double w, double d, double z0, double h) {
    const double u = std::uniform_real_distribution<double>(0, 1)(rng_);
    const Box& b = in_;
    if (side < 2) {
      const double x = b.min.x + u * std::max(0.0, b.Extent().x - w);
      const double y = side == 0 ? b.min.y : b.max.y - d;
      return Box{{x, y, z0}, {x + w, y + d, z0 + h}};
    }
    const double y = b.min.y + u * std::max(0.0, b.Extent().y - w);
    const double x = side == 2 ? b.min.x : b.max.x - d;
    return Box{{x, y, z0}, {x + d, y + w, z0 + h}};
  }

  std::optional<Box> Propose(const Item& item) {
    const double w = Round2(Uniform(rng_, item.w));
    const double d = std::max(0.01, Round2(Uniform(rng_, item.d)));
    const double h = std::max(0.01, Round2(Uniform(rng_, item.h)));
    const double floor = in_.min.z;
    const int side = std::uniform_int_distribution<int>(0, 3)(rng_);
    switch (item.place) {
      case Place::kWall:
        return AgainstWall(side, w, d, floor, h);
      case Place::kMounted:
        return AgainstWall(side, w, d, floor + Round2(Uniform(rng_, item.elev)), h);
      case Place::kFree: {
        const double margin = 0.6;
        const double sx = in_.Extent().x - 2 * margin - w;
        const double sy = in_.Extent().y - 2 * margin - d;
        if (sx <= 0 || sy <= 0) return std::nullopt;
        const double x = in_.min.x + margin + Uniform(rng_, {0, sx});
        const double y = in_.min.y + margin + Uniform(rng_, {0, sy});
        return Box{{x, y, floor}, {x + w, y + d, floor + h}};
      }
      case Place::kBeside: {
        const std::optional<Box> p = Parent(item.parent);
        if (!p) return std::nullopt;
        const double gap = 0.05;
        const double u = std::uniform_real_distribution<double>(0, 1)(rng_);
        double x, y;
        if (side < 2) {  // beside along y
          x = p->min.x + u * (p->Extent().x - w);
          y = side == 0 ? p->min.y - gap - d : p->max.y + gap;
        } else {
          y = p->min.y + u * (p->Extent().y - d);
          x = side == 2 ? p->min.x - gap - w : p->max.x + gap;
        }
        return Box{{x, y, floor}, {x + w, y + d, floor + h}};
      }
      case Place::kOnTop: {
        const std::optional<Box> p = Parent(item.parent);
        if (!p) return std::nullopt;
        const double fw = std::min(w, p->Extent().x * 0.9);
        const double fd = std::min(d, p->Extent().y * 0.9);
        const double x = p->min.x + Uniform(rng_, {0, p->Extent().x - fw});
        const double y = p->min.y + Uniform(rng_, {0, p->Extent().y - fd});
        return Box{{x, y, p->max.z}, {x + fw, y + fd, p->max.z + h}};
      }
    }
    return std::nullopt;
  }

  bool Fits(const Box& hull, Place place) const {
    if (!in_.ContainsBox(hull)) return false;
    if (place == Place::kOnTop) return true;
    for (const Placed& p : placed_) {
      if (p.place == Place::kOnTop) continue;
      const bool floor_pair = place != Place::kMounted && p.place != Place::kMounted;
      if (floor_pair) {
        if (Overlaps2D(hull, p.hull, 0.05)) return false;
      } else if (hull.Expanded(0.02).Overlaps(p.hull)) {
        return false;
      }
    }
    return true;
  }

  Box in_;
  const CategoryTable& table_;
  std::mt19937_64& rng_;
  std::vector<Placed> placed_;
  std::vector<SceneObject> objects_;
};

std::vector<SceneObject> Shell(const Box& in, double t, const CategoryTable& table) {
  const CategoryId wall = *table.Find("wall");
  const CategoryId floor = *table.Find("floor");
  const CategoryId ceiling = *table.Find("ceiling");
  const Vec3& a = in.min;
  const Vec3& b = in.max;
  return {
      {floor, {Box{{a.x - t, a.y - t, a.z - t}, {b.x + t, b.y + t, a.z}}}},
      {ceiling, {Box{{a.x - t, a.y - t, b.z}, {b.x + t, b.y + t, b.z + t}}}},
      {wall, {Box{{a.x - t, a.y - t, a.z}, {b.x + t, a.y, b.z}}}},
      {wall, {Box{{a.x - t, b.y, a.z}, {b.x + t, b.y + t, b.z}}}},
      {wall, {Box{{a.x - t, a.y, a.z}, {a.x, b.y, b.z}}}},
      {wall, {Box{{b.x, a.y, a.z}, {b.x + t, b.y, b.z}}}},
  };
}

}  // namespace

void SuiteParams::Validate() const {
  PresetRooms(preset);
  if (example_images < 1) throw std::invalid_argument("example_images must be >= 1");
  if (example_width < 1 || example_height < 1) {
    throw std::invalid_argument("example resolution must be positive");
  }
}

Scene GenerateApartment(const std::string& preset, std::uint64_t seed) {
  const std::vector<std::string> plan = PresetRooms(preset);
  const CategoryTable table = CategoryTable::Nyu40();
  const double t = Scene::kDefaultWallThickness;
  std::mt19937_64 rng(seed);
  std::vector<Room> rooms;
  std::vector<int> per_type_count(RoomTypes().size(), 0);
  double cursor = 0.0;
  for (const std::string& type_name : plan) {
    const RoomType& type = FindType(type_name);
    const auto type_index = &type - RoomTypes().data();
    Room room;
    room.id = type_name + "_" + std::to_string(per_type_count[type_index]++);
    for (;;) {
      const double area = Uniform(rng, type.area);
      const double aspect = Uniform(rng, {1.0, 1.6});
      const double w = Round2(std::sqrt(area * aspect));
      const double d = Round2(area / w);
      const double h = Round2(Uniform(rng, {2.5, 3.0}));
      if (w * d < kMinRoomArea || w * d > kMaxRoomArea) continue;
      room.bounds = Box{{cursor, 0.0, 0.0}, {cursor + w, d, h}};
      RoomFurnisher furnisher(room.bounds, table, rng);
      std::vector<SceneObject> furniture = furnisher.Furnish(type);
      if (static_cast<int>(furniture.size()) < kMinRoomObjects) continue;
      room.objects = Shell(room.bounds, t, table);
      room.objects.insert(room.objects.end(), furniture.begin(), furniture.end());
      break;
    }
    cursor = Round2(room.bounds.max.x + 2 * t + 0.5);
    rooms.push_back(std::move(room));
  }
  return Scene(table, std::move(rooms), t);
}

std::vector<Candidate> SampleTruthCameras(const Scene& scene,
                                          const PhotographerModel& model,
                                          int count, std::mt19937_64& rng) {
  std::vector<int> eligible;
  for (int r = 0; r < static_cast<int>(scene.rooms().size()); ++r) {
    const Box& b = scene.rooms()[r].bounds;
    if (b.min.z + model.height_max < b.max.z - 0.05 &&
        b.Extent().x > 2 * model.wall_margin && b.Extent().y > 2 * model.wall_margin) {
      eligible.push_back(r);
    }
  }
  if (eligible.empty()) throw AlgorithmError("no room fits the photographer model");
  std::normal_distribution<double> height(model.height_mean, model.height_std);
  std::normal_distribution<double> yaw_noise(0.0, model.yaw_std);
  std::normal_distribution<double> pitch(model.pitch_mean, model.pitch_std);
  std::normal_distribution<double> roll(0.0, model.roll_std);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  std::vector<Candidate> out;
  for (int i = 0; i < count; ++i) {
    const int r = eligible[i % eligible.size()];
    const Room& room = scene.rooms()[r];
    const Box& b = room.bounds;
    std::optional<Vec3> pos;
    for (int attempt = 0; attempt < 10000 && !pos; ++attempt) {
      const Vec3 p{b.min.x + model.wall_margin + unit(rng) * (b.Extent().x - 2 * model.wall_margin),
                   b.min.y + model.wall_margin + unit(rng) * (b.Extent().y - 2 * model.wall_margin),
                   b.min.z + std::clamp(height(rng), model.height_min, model.height_max)};
      bool clear = true;
      for (const SceneObject& obj : room.objects) {
        if (scene.categories().IsStructural(obj.category)) continue;
        for (const Box& box : obj.boxes) {
          if (PointBoxDistance(p, box) < model.object_margin) clear = false;
        }
      }
      if (clear) pos = p;
    }
    if (!pos) throw AlgorithmError("room '" + room.id + "' has no free standing spot");
    const Vec3 c = b.Center();
    const double dx = c.x - pos->x, dy = c.y - pos->y;
    const double bearing = std::hypot(dx, dy) > 0.5 ? std::atan2(dy, dx)
                                                    : 2 * kPi * unit(rng);
    Candidate cam;
    cam.id = i;
    cam.room = room.id;
    cam.camera.position = *pos;
    cam.camera.yaw = std::remainder(bearing + yaw_noise(rng), 2 * kPi);
    cam.camera.pitch = std::clamp(pitch(rng), DegToRad(-80.0), DegToRad(80.0));
    cam.camera.roll = roll(rng);
    out.push_back(std::move(cam));
  }
  return out;
}

Suite GenerateSuite(const SuiteParams& params) {
  params.Validate();
  Suite suite;
  suite.name = "apartment_" + params.preset;
  suite.scene = GenerateApartment(params.preset, params.seed);
  std::mt19937_64 rng(params.seed ^ Fnv1a64("photographer"));
  suite.truth_cameras = SampleTruthCameras(suite.scene, params.photographer,
                                           params.example_images, rng);
  suite.examples.name = suite.name;
  suite.examples.mode = PixelMode::kRgbd;
  suite.examples.categories = suite.scene.categories();
  for (const Candidate& c : suite.truth_cameras) {
    suite.examples.images.push_back(RenderView(
        suite.scene, c.camera, params.example_width, params.example_height));
  }
  return suite;
}

SuitePaths SuiteOutputPaths(const std::filesystem::path& out,
                            const std::string& name) {
  return {out / "scenes" / (name + ".json"),
          out / "scenes" / (name + "_truth.jsonl"),
          out / "examples" / name};
}

SuitePaths WriteSuite(const std::filesystem::path& out, const Suite& suite) {
  const SuitePaths paths = SuiteOutputPaths(out, suite.name);
  SaveScene(suite.scene, paths.scene);
  CandidateFileHeader header;
  header.categories_fingerprint = suite.scene.categories().Fingerprint();
  header.num_categories = suite.scene.categories().size();
  header.producer = "suite";
  WriteCandidateFile(paths.truth, header, suite.truth_cameras);
  SaveExampleSet(paths.examples, suite.examples);
  return paths;
}

}  // namespace viewscope
