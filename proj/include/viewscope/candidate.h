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

// Candidate views and the line-oriented candidate list file.
//
// Each line is one JSON record. View records look like
//   {"id":17,"room":"r0","camera":{"pos":[x,y,z],"yaw":..,"pitch":..,
//    "roll":..},"aggregate":..,"vector":[..n..]}
// where "aggregate" and "vector" are optional (baseline views carry none
// until rescored). Header records {"kind":"header",...} may appear anywhere,
// so shards written independently can be concatenated; all headers of a
// file must agree.

#ifndef VIEWSCOPE_CANDIDATE_H_
#define VIEWSCOPE_CANDIDATE_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "viewscope/camera.h"

namespace viewscope {

struct Candidate {
  std::int64_t id = 0;
  std::string room;
  Camera camera;
  std::vector<double> scores;  // W_{i,c}; empty when unscored
  double aggregate = 0.0;      // sum of scores
  double whole_image = 0.0;    // unweighted whole-image likelihood

  bool scored() const { return !scores.empty(); }
  friend bool operator==(const Candidate&, const Candidate&) = default;
};

struct CandidateFileHeader {
  std::string config_hash;
  std::uint64_t categories_fingerprint = 0;
  int num_categories = 0;
  double hfov = kDefaultHfov;
  double aspect = kDefaultAspect;
  std::string producer;  // verb that wrote the file

  friend bool operator==(const CandidateFileHeader&,
                         const CandidateFileHeader&) = default;
};

std::string HeaderRecord(const CandidateFileHeader& header);
std::string CandidateRecord(const Candidate& candidate);

// Header line followed by one line per candidate.
void WriteCandidateFile(const std::filesystem::path& path,
                        const CandidateFileHeader& header,
                        const std::vector<Candidate>& candidates);

struct CandidateFile {
  CandidateFileHeader header;
  bool has_header = false;
  std::vector<Candidate> candidates;
};

// Throws ParseError (with line numbers) or ValidationError when headers
// disagree, ids repeat, or a vector length differs from the header's
// category count. Cameras pick up hfov/aspect from the header.
CandidateFile ReadCandidateFile(const std::filesystem::path& path);
CandidateFile ParseCandidateText(const std::string& text,
                                 const std::string& source);

}  // namespace viewscope

#endif  // VIEWSCOPE_CANDIDATE_H_
