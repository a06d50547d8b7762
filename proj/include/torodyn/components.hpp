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

#ifndef TORODYN_COMPONENTS_HPP
#define TORODYN_COMPONENTS_HPP

#include <cstdint>
#include <vector>

#include "torodyn/raster.hpp"

namespace torodyn {

struct ComponentInfo {
  int id = -1;
  long long cells = 0;
  bool touches_bottom = false;
  bool touches_top = false;
};

// Labels of all set cells; -1 elsewhere. Connectivity follows the mask role
// (closed: 8, open: 4); the x direction wraps.
struct Labeling {
  Raster raster;
  std::vector<std::int32_t> label;
  std::vector<ComponentInfo> components;

  std::int32_t at(int x, int y) const {
    return label[static_cast<std::size_t>(y) * raster.nx + x];
  }
};

inline Labeling label_components(const RegionMask& m) {
  const int nx = m.raster.nx, ny = m.raster.ny;
  const bool eight = (m.role == MaskRole::kClosed);
  Labeling lab;
  lab.raster = m.raster;
  lab.label.assign(static_cast<std::size_t>(nx) * ny, -1);
  std::vector<std::int64_t> queue;
  queue.reserve(1024);
  for (int sy = 0; sy < ny; ++sy) {
    for (int sx = 0; sx < nx; ++sx) {
      if (!m.get(sx, sy)) continue;
      if (lab.label[static_cast<std::size_t>(sy) * nx + sx] != -1) continue;
      ComponentInfo info;
      info.id = static_cast<int>(lab.components.size());
      queue.clear();
      queue.push_back(static_cast<std::int64_t>(sy) * nx + sx);
      lab.label[static_cast<std::size_t>(sy) * nx + sx] = info.id;
      std::size_t head = 0;
      while (head < queue.size()) {
        std::int64_t cur = queue[head++];
        int y = static_cast<int>(cur / nx);
        int x = static_cast<int>(cur % nx);
        ++info.cells;
        if (y == 0) info.touches_bottom = true;
        if (y == ny - 1) info.touches_top = true;
        auto visit = [&](int vx, int vy) {
          if (vy < 0 || vy >= ny) return;
          vx = (vx + nx) % nx;
          std::size_t idx = static_cast<std::size_t>(vy) * nx + vx;
          if (lab.label[idx] != -1) return;
          if (!m.get(vx, vy)) return;
          lab.label[idx] = info.id;
          queue.push_back(static_cast<std::int64_t>(vy) * nx + vx);
        };
        visit(x - 1, y);
        visit(x + 1, y);
        visit(x, y - 1);
        visit(x, y + 1);
        if (eight) {
          visit(x - 1, y - 1);
          visit(x + 1, y - 1);
          visit(x - 1, y + 1);
          visit(x + 1, y + 1);
        }
      }
      lab.components.push_back(info);
    }
  }
  return lab;
}

inline RegionMask extract_component(const Labeling& lab, int id,
                                    MaskRole role) {
  RegionMask m(lab.raster, role);
  const int nx = lab.raster.nx;
  for (int y = 0; y < lab.raster.ny; ++y)
    for (int x = 0; x < nx; ++x)
      if (lab.label[static_cast<std::size_t>(y) * nx + x] == id) m.set(x, y);
  return m;
}

inline bool is_connected(const RegionMask& m) {
  Labeling lab = label_components(m);
  return lab.components.size() == 1;
}

}  // namespace torodyn

#endif  // TORODYN_COMPONENTS_HPP
