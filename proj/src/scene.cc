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

#include "viewscope/scene.h"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "viewscope/errors.h"
#include "viewscope/json_util.h"

namespace viewscope {

using nlohmann::json;

Box SceneObject::Bounds() const {
  Box hull = boxes.front();
  for (const Box& b : boxes) hull.ExtendBy(b);
  return hull;
}

double SceneObject::SurfaceArea() const {
  double area = 0.0;
  for (const Box& b : boxes) area += b.SurfaceArea();
  return area;
}

namespace {

std::vector<std::string> CollectViolations(const CategoryTable& categories,
                                           const std::vector<Room>& rooms,
                                           double wall_thickness) {
  std::vector<std::string> out;
  if (categories.size() == 0) out.push_back("categories: table is empty");
  if (categories.size() > kBackground) {
    out.push_back("categories: at most 255 categories are supported");
  }
  if (!(wall_thickness >= 0.0)) {
    out.push_back("wall_thickness: must be nonnegative");
  }
  std::set<std::string> ids;
  for (size_t r = 0; r < rooms.size(); ++r) {
    const Room& room = rooms[r];
    const std::string where = "rooms[" + std::to_string(r) + "] (id '" +
                              room.id + "')";
    if (room.id.empty()) out.push_back(where + ": empty room id");
    if (!ids.insert(room.id).second) {
      out.push_back(where + ": duplicate room id");
    }
    if (!room.bounds.HasPositiveExtent()) {
      out.push_back(where + ": bounds min must be < max on every axis");
    }
  }
  for (size_t r = 0; r < rooms.size(); ++r) {
    const Room& room = rooms[r];
    for (size_t o = 0; o < room.objects.size(); ++o) {
      const SceneObject& obj = room.objects[o];
      const std::string where = "rooms[" + std::to_string(r) + "].objects[" +
                                std::to_string(o) + "]";
      if (obj.category < 0 || obj.category >= categories.size()) {
        out.push_back(where + ": category id " + std::to_string(obj.category) +
                      " out of range [0, " +
                      std::to_string(categories.size()) + ")");
      }
      if (obj.boxes.empty()) out.push_back(where + ": empty box list");
      for (size_t b = 0; b < obj.boxes.size(); ++b) {
        const Box& box = obj.boxes[b];
        const std::string bwhere = where + ".boxes[" + std::to_string(b) + "]";
        if (!box.HasPositiveExtent()) {
          out.push_back(bwhere + ": box must have positive extent");
          continue;
        }
        bool contained = false;
        for (const Room& other : rooms) {
          if (other.bounds.Expanded(wall_thickness + 1e-9).ContainsBox(box)) {
            contained = true;
            break;
          }
        }
        if (!contained) {
          out.push_back(bwhere +
                        ": box lies outside every room's bounds expanded by "
                        "the wall thickness");
        }
      }
    }
  }
  return out;
}

}  // namespace

Scene::Scene(CategoryTable categories, std::vector<Room> rooms,
             double wall_thickness)
    : categories_(std::move(categories)),
      rooms_(std::move(rooms)),
      wall_thickness_(wall_thickness) {
  Validate();
  BuildIndex();
}

void Scene::Validate() const {
  const std::vector<std::string> violations =
      CollectViolations(categories_, rooms_, wall_thickness_);
  if (!violations.empty()) {
    std::string msg = "invalid scene: " + violations.front();
    if (violations.size() > 1) {
      msg += " (and " + std::to_string(violations.size() - 1) + " more)";
    }
    throw ValidationError(msg);
  }
}

void Scene::BuildIndex() {
  room_box_begin_.assign(1, 0);
  for (int r = 0; r < static_cast<int>(rooms_.size()); ++r) {
    const Room& room = rooms_[r];
    Box hull = room.bounds;
    room_object_begin_.push_back(static_cast<int>(object_room_.size()));
    for (int o = 0; o < static_cast<int>(room.objects.size()); ++o) {
      const int flat_object = static_cast<int>(object_room_.size());
      object_room_.push_back(r);
      object_local_.push_back(o);
      for (const Box& b : room.objects[o].boxes) {
        boxes_.push_back({b, room.objects[o].category, r, flat_object});
        hull.ExtendBy(b);
      }
    }
    room_box_begin_.push_back(static_cast<int>(boxes_.size()));
    room_hull_.push_back(hull);
  }
}

int Scene::RoomIndex(const std::string& id) const {
  for (int r = 0; r < static_cast<int>(rooms_.size()); ++r) {
    if (rooms_[r].id == id) return r;
  }
  return -1;
}

namespace {

Box ParseBox(const json& j, const std::string& path) {
  return Box{JsonVec3(JsonField(j, "min", path), path + ".min"),
             JsonVec3(JsonField(j, "max", path), path + ".max")};
}

json BoxToJson(const Box& b) {
  return json{{"min", {b.min.x, b.min.y, b.min.z}},
              {"max", {b.max.x, b.max.y, b.max.z}}};
}

struct ParsedScene {
  CategoryTable categories;
  std::vector<Room> rooms;
  double wall_thickness = Scene::kDefaultWallThickness;
};

ParsedScene ParseSceneDocument(const json& doc);

ParsedScene ParseSceneJson(const std::string& text, const std::string& source) {
  const json doc = ParseJsonText(text, source);
  try {
    return ParseSceneDocument(doc);
  } catch (const ParseError& e) {
    throw ParseError(source + ": " + e.what());
  }
}

ParsedScene ParseSceneDocument(const json& doc) {
  ParsedScene out;
  const std::string root = "$";
  std::vector<std::string> names;
  for (const json& n : JsonArray(JsonField(doc, "categories", root),
                                 root + ".categories")) {
    if (!n.is_string()) {
      throw ParseError(root + ".categories: expected string names");
    }
    names.push_back(n.get<std::string>());
  }
  out.categories = CategoryTable(std::move(names));
  if (doc.contains("wall_thickness")) {
    out.wall_thickness = JsonNumber(doc["wall_thickness"],
                                    root + ".wall_thickness");
  }
  const json& rooms = JsonArray(JsonField(doc, "rooms", root), root + ".rooms");
  for (size_t r = 0; r < rooms.size(); ++r) {
    const std::string rpath = root + ".rooms[" + std::to_string(r) + "]";
    Room room;
    room.id = JsonString(JsonField(rooms[r], "id", rpath), rpath + ".id");
    room.bounds = ParseBox(JsonField(rooms[r], "bounds", rpath),
                           rpath + ".bounds");
    const json& objects = JsonArray(JsonField(rooms[r], "objects", rpath),
                                    rpath + ".objects");
    for (size_t o = 0; o < objects.size(); ++o) {
      const std::string opath = rpath + ".objects[" + std::to_string(o) + "]";
      SceneObject obj;
      obj.category = JsonInt(JsonField(objects[o], "category", opath),
                             opath + ".category");
      const json& boxes = JsonArray(JsonField(objects[o], "boxes", opath),
                                    opath + ".boxes");
      for (size_t b = 0; b < boxes.size(); ++b) {
        obj.boxes.push_back(
            ParseBox(boxes[b], opath + ".boxes[" + std::to_string(b) + "]"));
      }
      room.objects.push_back(std::move(obj));
    }
    out.rooms.push_back(std::move(room));
  }
  return out;
}

}  // namespace

Scene ParseScene(const std::string& text, const std::string& source_name) {
  ParsedScene parsed = ParseSceneJson(text, source_name);
  try {
    return Scene(std::move(parsed.categories), std::move(parsed.rooms),
                 parsed.wall_thickness);
  } catch (const ValidationError& e) {
    throw ValidationError(source_name + ": " + e.what());
  }
}

Scene LoadScene(const std::filesystem::path& path) {
  return ParseScene(ReadTextFile(path), path.string());
}

std::string SerializeScene(const Scene& scene) {
  json doc;
  doc["categories"] = scene.categories().names();
  doc["wall_thickness"] = scene.wall_thickness();
  json rooms = json::array();
  for (const Room& room : scene.rooms()) {
    json objects = json::array();
    for (const SceneObject& obj : room.objects) {
      json boxes = json::array();
      for (const Box& b : obj.boxes) boxes.push_back(BoxToJson(b));
      objects.push_back({{"category", obj.category}, {"boxes", boxes}});
    }
    rooms.push_back({{"id", room.id},
                     {"bounds", BoxToJson(room.bounds)},
                     {"objects", objects}});
  }
  doc["rooms"] = rooms;
  return doc.dump(1) + "\n";
}

void SaveScene(const Scene& scene, const std::filesystem::path& path) {
  WriteTextFile(path, SerializeScene(scene));
}

std::vector<std::string> ValidateSceneFile(const std::filesystem::path& path) {
  try {
    ParsedScene parsed = ParseSceneJson(ReadTextFile(path), path.string());
    return CollectViolations(parsed.categories, parsed.rooms,
                             parsed.wall_thickness);
  } catch (const ParseError& e) {
    return {e.what()};
  } catch (const IoError& e) {
    return {e.what()};
  }
}

}  // namespace viewscope
