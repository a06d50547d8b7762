// Copyright 2026 The torodyn authors
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

#ifndef TORODYN_IO_HPP
#define TORODYN_IO_HPP

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "torodyn/error.hpp"
#include "torodyn/raster.hpp"

namespace torodyn {

// Writes bytes to a temporary file in the target directory, then renames, so
// readers never observe a partial file.
inline void atomic_write_file(const std::string& path,
                              const std::string& bytes) {
  std::filesystem::path p(path);
  std::filesystem::path tmp = p;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open '" + tmp.string() + "' for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error("short write to '" + tmp.string() + "'");
  }
  std::filesystem::rename(tmp, p);
}

// Binary portable bitmap (P4); row 0 of the mask is emitted last so that the
// image is oriented with y increasing upward.
inline std::string mask_to_pbm(const RegionMask& m) {
  const int nx = m.raster.nx, ny = m.raster.ny;
  std::string out = "P4\n" + std::to_string(nx) + " " + std::to_string(ny) +
                    "\n";
  const int row_bytes = (nx + 7) / 8;
  for (int y = ny - 1; y >= 0; --y) {
    std::string row(static_cast<std::size_t>(row_bytes), '\0');
    for (int x = 0; x < nx; ++x)
      if (m.get(x, y)) row[x >> 3] |= static_cast<char>(0x80 >> (x & 7));
    out += row;
  }
  return out;
}

inline void write_pbm(const RegionMask& m, const std::string& path) {
  atomic_write_file(path, mask_to_pbm(m));
}

struct Rgb {
  std::uint8_t r = 0, g = 0, b = 0;
};

// Simple rainbow ramp for level/heat rendering of values in [0,1).
inline Rgb hue_ramp(double t) {
  t -= std::floor(t);
  double h = 6.0 * t;
  int i = static_cast<int>(h) % 6;
  double f = h - std::floor(h);
  auto byte = [](double v) {
    return static_cast<std::uint8_t>(v * 255.0 + 0.5);
  };
  std::uint8_t q = byte(1.0 - f), u = byte(f), full = 255, zero = 0;
  switch (i) {
    case 0:  return {full, u, zero};
    case 1:  return {q, full, zero};
    case 2:  return {zero, full, u};
    case 3:  return {zero, q, full};
    case 4:  return {u, zero, full};
    default: return {full, zero, q};
  }
}

// Binary portable pixmap (P6); pixels indexed [y][x] with y increasing
// upward in the image.
inline std::string pixels_to_ppm(const std::vector<std::vector<Rgb>>& px) {
  const int ny = static_cast<int>(px.size());
  const int nx = ny > 0 ? static_cast<int>(px[0].size()) : 0;
  std::string out = "P6\n" + std::to_string(nx) + " " + std::to_string(ny) +
                    "\n255\n";
  for (int y = ny - 1; y >= 0; --y)
    for (int x = 0; x < nx; ++x) {
      out.push_back(static_cast<char>(px[y][x].r));
      out.push_back(static_cast<char>(px[y][x].g));
      out.push_back(static_cast<char>(px[y][x].b));
    }
  return out;
}

inline void write_ppm(const std::vector<std::vector<Rgb>>& px,
                      const std::string& path) {
  atomic_write_file(path, pixels_to_ppm(px));
}

}  // namespace torodyn

#endif  // TORODYN_IO_HPP
