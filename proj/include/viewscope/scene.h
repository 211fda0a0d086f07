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

// Scenes are rooms of category-labeled axis-aligned boxes. A scene is
// immutable once constructed; the constructor validates every invariant and
// builds the flat box arrays used by the raycaster.

#ifndef VIEWSCOPE_SCENE_H_
#define VIEWSCOPE_SCENE_H_

#include <filesystem>
#include <string>
#include <vector>

#include "viewscope/categories.h"
#include "viewscope/geometry.h"

namespace viewscope {

struct SceneObject {
  CategoryId category = 0;
  std::vector<Box> boxes;

  // Axis-aligned hull of all boxes.
  Box Bounds() const;
  double SurfaceArea() const;
  friend bool operator==(const SceneObject&, const SceneObject&) = default;
};

struct Room {
  std::string id;
  // Interior volume. Shell boxes (walls, floor, ceiling) sit within
  // `wall_thickness` outside of it.
  Box bounds;
  std::vector<SceneObject> objects;

  double FloorArea() const {
    const Vec3 e = bounds.Extent();
    return e.x * e.y;
  }
  friend bool operator==(const Room&, const Room&) = default;
};

// One box of the flattened scene, with back references.
struct FlatBox {
  Box box;
  CategoryId category;
  int room;
  int object;  // index into Scene::objects_flat order
};

class Scene {
 public:
  static constexpr double kDefaultWallThickness = 0.1;

  Scene() = default;
  // Throws ValidationError naming the offending room/object.
  Scene(CategoryTable categories, std::vector<Room> rooms,
        double wall_thickness = kDefaultWallThickness);

  const CategoryTable& categories() const { return categories_; }
  const std::vector<Room>& rooms() const { return rooms_; }
  double wall_thickness() const { return wall_thickness_; }

  int RoomIndex(const std::string& id) const;  // -1 when absent

  // Flattened geometry. Objects are numbered scene-wide in room order.
  const std::vector<FlatBox>& boxes() const { return boxes_; }
  int object_count() const { return static_cast<int>(object_room_.size()); }
  int ObjectRoom(int flat_object) const { return object_room_[flat_object]; }
  int ObjectLocalIndex(int flat_object) const {
    return object_local_[flat_object];
  }
  const SceneObject& Object(int flat_object) const {
    return rooms_[object_room_[flat_object]]
        .objects[object_local_[flat_object]];
  }
  int FirstObjectOfRoom(int room) const { return room_object_begin_[room]; }
  // Box range [begin, end) of a room in boxes().
  int RoomBoxBegin(int room) const { return room_box_begin_[room]; }
  int RoomBoxEnd(int room) const { return room_box_begin_[room + 1]; }
  // Hull of the room's geometry (shell included).
  const Box& RoomHull(int room) const { return room_hull_[room]; }

  friend bool operator==(const Scene& a, const Scene& b) {
    return a.categories_ == b.categories_ && a.rooms_ == b.rooms_ &&
           a.wall_thickness_ == b.wall_thickness_;
  }

 private:
  void Validate() const;
  void BuildIndex();

  CategoryTable categories_;
  std::vector<Room> rooms_;
  double wall_thickness_ = kDefaultWallThickness;

  std::vector<FlatBox> boxes_;
  std::vector<int> room_box_begin_;
  std::vector<Box> room_hull_;
  std::vector<int> room_object_begin_;
  std::vector<int> object_room_;
  std::vector<int> object_local_;
};

// JSON scene schema:
//   {categories:[names...], wall_thickness?: m,
//    rooms:[{id, bounds:{min:[x,y,z],max:[x,y,z]},
//            objects:[{category:int, boxes:[{min,max}...]}...]}...]}
// Throws ParseError (with line/column or field path) or ValidationError.
Scene LoadScene(const std::filesystem::path& path);
Scene ParseScene(const std::string& text, const std::string& source_name);
std::string SerializeScene(const Scene& scene);
void SaveScene(const Scene& scene, const std::filesystem::path& path);

// Lists every invariant violation instead of stopping at the first. Empty
// when the file is valid.
std::vector<std::string> ValidateSceneFile(const std::filesystem::path& path);

}  // namespace viewscope

#endif  // VIEWSCOPE_SCENE_H_
