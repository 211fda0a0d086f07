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

// Minimal netpbm graymap codec: P2 (ASCII) and P5 (binary) input, P5 output.
// 16-bit samples are big-endian, as netpbm specifies.

#ifndef VIEWSCOPE_PGM_H_
#define VIEWSCOPE_PGM_H_

#include <cstdint>
#include <filesystem>
#include <vector>

namespace viewscope {

struct PgmImage {
  int width = 0;
  int height = 0;
  int maxval = 255;
  std::vector<std::uint16_t> pixels;  // row-major

  friend bool operator==(const PgmImage&, const PgmImage&) = default;
};

// Throws IoError if unreadable, ParseError if malformed.
PgmImage ReadPgm(const std::filesystem::path& path);

// Writes P5. maxval <= 255 produces one byte per sample, otherwise two.
void WritePgm(const std::filesystem::path& path, const PgmImage& image);

}  // namespace viewscope

#endif  // VIEWSCOPE_PGM_H_
