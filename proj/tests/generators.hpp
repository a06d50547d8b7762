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
//
// Random geometric inputs shared between the unit tests and the acceptance
// suite. Shapes are drawn in continuous coordinates (units, not cells) so the
// same draw can be rasterized at several resolutions. Feature sizes keep a
// floor of ~4 cells at 256x256: disks either overlap their neighbors solidly
// or stay well separated, so no sub-resolution pockets form.

#ifndef TORODYN_TESTS_GENERATORS_HPP
#define TORODYN_TESTS_GENERATORS_HPP

#include <cmath>
#include <vector>

#include "torodyn/components.hpp"
#include "torodyn/raster.hpp"
#include "torodyn/rng.hpp"

namespace testgen {

struct Disk {
  double cx, cy, r;
};

struct ShapeSpec {
  double band_lo = 0.0, band_hi = 0.0;  // full-width band in y units
  std::vector<Disk> disks;
};

inline constexpr double kGapUnits = 0.08;      // min clear separation
inline constexpr double kOverlapUnits = 0.08;  // min solid overlap depth

inline bool disk_placement_ok(const ShapeSpec& s, const Disk& d) {
  // against the band: solid intersection or clear gap
  double band_gap_lo = s.band_lo - (d.cy + d.r);
  double band_gap_hi = (d.cy - d.r) - s.band_hi;
  double gap = std::max(band_gap_lo, band_gap_hi);  // >0 means separated
  bool separated = gap >= kGapUnits;
  bool overlaps = d.cy - d.r <= s.band_hi && d.cy + d.r >= s.band_lo;
  // any crossed band edge must be crossed steeply (near the disk equator);
  // shallow crossings leave wedges thinner than a cell
  bool steep = true;
  for (double edge : {s.band_lo, s.band_hi}) {
    double off = std::abs(edge - d.cy);
    if (off < d.r && off > 0.6 * d.r) steep = false;
  }
  bool solid = overlaps && steep;
  if (!separated && !solid) return false;
  for (const Disk& e : s.disks) {
    double dx = std::abs(d.cx - e.cx);
    dx = std::min(dx, 1.0 - dx);  // x wraps
    double dist = std::hypot(dx, d.cy - e.cy);
    bool apart = dist >= d.r + e.r + kGapUnits;
    bool merged = dist <= d.r + e.r - kOverlapUnits;
    if (!apart && !merged) return false;
  }
  return true;
}

// Union of a full-width band and 1-5 disks near it. Serves as a generating
// set (bounded below and above, essential closure).
inline ShapeSpec random_generating_shape(torodyn::Rng& rng, double y_lo,
                                         double y_hi) {
  ShapeSpec s;
  double mid = rng.range(y_lo + 0.3, y_hi - 0.3);
  double half = rng.range(0.02, 0.08);
  s.band_lo = mid - half;
  s.band_hi = mid + half;
  int disks = static_cast<int>(rng.uniform_int(1, 5));
  for (int i = 0; i < disks; ++i) {
    for (int attempt = 0; attempt < 64; ++attempt) {
      Disk d{rng.unit(), rng.range(y_lo + 0.26, y_hi - 0.26),
             rng.range(0.05, 0.22)};
      if (d.cy - d.r < y_lo + 0.04 || d.cy + d.r > y_hi - 0.04) continue;
      if (disk_placement_ok(s, d)) {
        s.disks.push_back(d);
        break;
      }
    }
  }
  return s;
}

// Same, but all disks straddle the band so the union is connected.
inline ShapeSpec random_continuum_shape(torodyn::Rng& rng, double y_lo,
                                        double y_hi) {
  ShapeSpec s;
  double mid = rng.range(y_lo + 0.35, y_hi - 0.35);
  double half = rng.range(0.02, 0.06);
  s.band_lo = mid - half;
  s.band_hi = mid + half;
  int disks = static_cast<int>(rng.uniform_int(1, 5));
  for (int i = 0; i < disks; ++i) {
    for (int attempt = 0; attempt < 64; ++attempt) {
      Disk d{rng.unit(), rng.range(mid - half, mid + half),
             rng.range(0.05, 0.2)};
      if (d.cy - d.r < y_lo + 0.04 || d.cy + d.r > y_hi - 0.04) continue;
      if (disk_placement_ok(s, d)) {
        s.disks.push_back(d);
        break;
      }
    }
  }
  return s;
}

inline torodyn::RegionMask rasterize_shape(const ShapeSpec& s,
                                           const torodyn::Raster& r) {
  torodyn::RegionMask m =
      torodyn::rasterize_band(r, s.band_lo, s.band_hi);
  for (const Disk& d : s.disks)
    m = torodyn::mask_union(m, torodyn::rasterize_disk(r, d.cx, d.cy, d.r));
  m.role = torodyn::MaskRole::kClosed;
  return m;
}

// Rasterizes and closes the shape into an annular continuum: bounded
// complement components (cavities between overlapping disks) are filled in.
inline torodyn::RegionMask rasterize_continuum(const ShapeSpec& s,
                                               const torodyn::Raster& r) {
  using namespace torodyn;
  RegionMask blob = rasterize_shape(s, r);
  RegionMask comp = mask_complement(blob);
  Labeling lab = label_components(comp);
  RegionMask keep(r, MaskRole::kOpen);
  for (const auto& c : lab.components)
    if (c.touches_bottom || c.touches_top)
      keep = mask_union(keep, extract_component(lab, c.id, MaskRole::kOpen));
  RegionMask filled = mask_complement(keep);
  filled.role = MaskRole::kClosed;
  return filled;
}

}  // namespace testgen

#endif  // TORODYN_TESTS_GENERATORS_HPP
