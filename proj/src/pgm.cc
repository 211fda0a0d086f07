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

#include "viewscope/pgm.h"

#include <cctype>
#include <fstream>
#include <sstream>
#include <string>

#include "viewscope/errors.h"

namespace viewscope {
namespace {

// Header token reader that skips whitespace and '#' comments.
class HeaderReader {
 public:
  HeaderReader(const std::string& data, const std::string& name)
      : data_(data), name_(name) {}

  std::string Token() {
    SkipSpaceAndComments();
    const size_t start = pos_;
    while (pos_ < data_.size() &&
           !std::isspace(static_cast<unsigned char>(data_[pos_]))) {
      ++pos_;
    }
    if (start == pos_) throw ParseError(name_ + ": truncated PGM header");
    return data_.substr(start, pos_ - start);
  }

  int Int() {
    const std::string tok = Token();
    try {
      size_t used = 0;
      const int v = std::stoi(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      return v;
    } catch (const std::exception&) {
      throw ParseError(name_ + ": expected integer in PGM, got '" + tok + "'");
    }
  }

  // Exactly one whitespace byte separates the header from binary data.
  size_t BinaryStart() {
    if (pos_ >= data_.size()) throw ParseError(name_ + ": missing PGM data");
    return pos_ + 1;
  }

 private:
  void SkipSpaceAndComments() {
    while (pos_ < data_.size()) {
      if (std::isspace(static_cast<unsigned char>(data_[pos_]))) {
        ++pos_;
      } else if (data_[pos_] == '#') {
        while (pos_ < data_.size() && data_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  const std::string& data_;
  const std::string& name_;
  size_t pos_ = 0;
};

}  // namespace

PgmImage ReadPgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string data = buf.str();
  const std::string name = path.string();

  HeaderReader header(data, name);
  const std::string magic = header.Token();
  if (magic != "P2" && magic != "P5") {
    throw ParseError(name + ": not a PGM file (magic '" + magic + "')");
  }
  PgmImage img;
  img.width = header.Int();
  img.height = header.Int();
  img.maxval = header.Int();
  if (img.width < 1 || img.height < 1 || img.maxval < 1 ||
      img.maxval > 65535) {
    throw ParseError(name + ": invalid PGM dimensions or maxval");
  }
  const size_t count = static_cast<size_t>(img.width) * img.height;
  img.pixels.resize(count);
  if (magic == "P2") {
    for (size_t i = 0; i < count; ++i) {
      const int v = header.Int();
      if (v < 0 || v > img.maxval) {
        throw ParseError(name + ": sample out of range at index " +
                         std::to_string(i));
      }
      img.pixels[i] = static_cast<std::uint16_t>(v);
    }
    return img;
  }
  const size_t start = header.BinaryStart();
  const size_t bytes_per = img.maxval > 255 ? 2 : 1;
  if (data.size() < start + count * bytes_per) {
    throw ParseError(name + ": truncated PGM raster");
  }
  const auto* p = reinterpret_cast<const unsigned char*>(data.data()) + start;
  for (size_t i = 0; i < count; ++i) {
    img.pixels[i] = bytes_per == 2
                        ? static_cast<std::uint16_t>((p[2 * i] << 8) |
                                                     p[2 * i + 1])
                        : p[i];
  }
  return img;
}

void WritePgm(const std::filesystem::path& path, const PgmImage& image) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << "P5\n" << image.width << " " << image.height << "\n"
      << image.maxval << "\n";
  std::string raster;
  if (image.maxval > 255) {
    raster.resize(image.pixels.size() * 2);
    for (size_t i = 0; i < image.pixels.size(); ++i) {
      raster[2 * i] = static_cast<char>(image.pixels[i] >> 8);
      raster[2 * i + 1] = static_cast<char>(image.pixels[i] & 0xff);
    }
  } else {
    raster.resize(image.pixels.size());
    for (size_t i = 0; i < image.pixels.size(); ++i) {
      raster[i] = static_cast<char>(image.pixels[i]);
    }
  }
  out.write(raster.data(), static_cast<std::streamsize>(raster.size()));
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace viewscope
