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

// Typed accessors over nlohmann::json that raise ParseError with the JSON
// path of the offending field.

#ifndef VIEWSCOPE_JSON_UTIL_H_
#define VIEWSCOPE_JSON_UTIL_H_

#include <filesystem>
#include <string>

#include "json.hpp"
#include "viewscope/geometry.h"

namespace viewscope {

// Parses `text`; syntax errors are reported as "<source>:<line>:<col>: ...".
nlohmann::json ParseJsonText(const std::string& text,
                             const std::string& source);

const nlohmann::json& JsonField(const nlohmann::json& obj,
                                const std::string& key,
                                const std::string& path);
const nlohmann::json& JsonArray(const nlohmann::json& j,
                                const std::string& path);
double JsonNumber(const nlohmann::json& j, const std::string& path);
int JsonInt(const nlohmann::json& j, const std::string& path);
std::string JsonString(const nlohmann::json& j, const std::string& path);
Vec3 JsonVec3(const nlohmann::json& j, const std::string& path);

std::string ReadTextFile(const std::filesystem::path& path);
// Writes through a temporary sibling and renames into place.
void WriteTextFile(const std::filesystem::path& path,
                   const std::string& contents);

}  // namespace viewscope

#endif  // VIEWSCOPE_JSON_UTIL_H_
