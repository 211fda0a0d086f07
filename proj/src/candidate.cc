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

#include "viewscope/candidate.h"

#include <set>
#include <sstream>

#include "json.hpp"
#include "viewscope/errors.h"
#include "viewscope/json_util.h"

namespace viewscope {

using nlohmann::json;

std::string HeaderRecord(const CandidateFileHeader& h) {
  json j{{"kind", "header"},
         {"config_hash", h.config_hash},
         {"categories_fingerprint", h.categories_fingerprint},
         {"num_categories", h.num_categories},
         {"hfov", h.hfov},
         {"aspect", h.aspect},
         {"producer", h.producer}};
  return j.dump();
}

std::string CandidateRecord(const Candidate& c) {
  json j{{"id", c.id},
         {"room", c.room},
         {"camera",
          {{"pos", {c.camera.position.x, c.camera.position.y,
                    c.camera.position.z}},
           {"yaw", c.camera.yaw},
           {"pitch", c.camera.pitch},
           {"roll", c.camera.roll}}}};
  if (c.scored()) {
    j["aggregate"] = c.aggregate;
    j["whole"] = c.whole_image;
    j["vector"] = c.scores;
  }
  return j.dump();
}

void WriteCandidateFile(const std::filesystem::path& path,
                        const CandidateFileHeader& header,
                        const std::vector<Candidate>& candidates) {
  std::string out = HeaderRecord(header) + "\n";
  for (const Candidate& c : candidates) out += CandidateRecord(c) + "\n";
  WriteTextFile(path, out);
}

namespace {

CandidateFileHeader ParseHeader(const json& j, const std::string& at) {
  CandidateFileHeader h;
  h.config_hash = JsonString(JsonField(j, "config_hash", at), at);
  const json& fp = JsonField(j, "categories_fingerprint", at);
  if (!fp.is_number_unsigned() && !fp.is_number_integer()) {
    throw ParseError(at + ".categories_fingerprint: expected an integer");
  }
  h.categories_fingerprint = fp.get<std::uint64_t>();
  h.num_categories = JsonInt(JsonField(j, "num_categories", at), at);
  h.hfov = JsonNumber(JsonField(j, "hfov", at), at);
  h.aspect = JsonNumber(JsonField(j, "aspect", at), at);
  if (j.contains("producer")) h.producer = JsonString(j["producer"], at);
  return h;
}

Candidate ParseCandidate(const json& j, const std::string& at) {
  Candidate c;
  const json& id = JsonField(j, "id", at);
  if (!id.is_number_integer()) throw ParseError(at + ".id: expected integer");
  c.id = id.get<std::int64_t>();
  c.room = JsonString(JsonField(j, "room", at), at + ".room");
  const json& cam = JsonField(j, "camera", at);
  c.camera.position = JsonVec3(JsonField(cam, "pos", at + ".camera"),
                               at + ".camera.pos");
  c.camera.yaw = JsonNumber(JsonField(cam, "yaw", at + ".camera"),
                            at + ".camera.yaw");
  c.camera.pitch = JsonNumber(JsonField(cam, "pitch", at + ".camera"),
                              at + ".camera.pitch");
  c.camera.roll = JsonNumber(JsonField(cam, "roll", at + ".camera"),
                             at + ".camera.roll");
  if (j.contains("vector")) {
    for (const json& v : JsonArray(j["vector"], at + ".vector")) {
      c.scores.push_back(JsonNumber(v, at + ".vector[]"));
    }
    c.aggregate = JsonNumber(JsonField(j, "aggregate", at), at + ".aggregate");
    if (j.contains("whole")) c.whole_image = JsonNumber(j["whole"], at);
  }
  return c;
}

}  // namespace

CandidateFile ParseCandidateText(const std::string& text,
                                 const std::string& source) {
  CandidateFile out;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  std::set<std::int64_t> ids;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string at = source + ":" + std::to_string(line_no);
    const json j = ParseJsonText(line, at);
    if (j.is_object() && j.contains("kind") && j["kind"] == "header") {
      const CandidateFileHeader h = ParseHeader(j, at);
      if (out.has_header && !(h == out.header)) {
        throw ValidationError(at + ": header disagrees with earlier header "
                                   "(mixed configurations or categories)");
      }
      out.header = h;
      out.has_header = true;
      continue;
    }
    Candidate c = ParseCandidate(j, at);
    if (!ids.insert(c.id).second) {
      throw ValidationError(at + ": duplicate candidate id " +
                            std::to_string(c.id));
    }
    out.candidates.push_back(std::move(c));
  }
  for (Candidate& c : out.candidates) {
    if (out.has_header) {
      c.camera.hfov = out.header.hfov;
      c.camera.aspect = out.header.aspect;
      if (c.scored() &&
          static_cast<int>(c.scores.size()) != out.header.num_categories) {
        throw ValidationError(source + ": candidate " + std::to_string(c.id) +
                              " has " + std::to_string(c.scores.size()) +
                              " scores, header says " +
                              std::to_string(out.header.num_categories));
      }
    }
    if (!c.camera.IsValid()) {
      throw ValidationError(source + ": candidate " + std::to_string(c.id) +
                            " has an invalid camera");
    }
  }
  return out;
}

CandidateFile ReadCandidateFile(const std::filesystem::path& path) {
  return ParseCandidateText(ReadTextFile(path), path.string());
}

}  // namespace viewscope
