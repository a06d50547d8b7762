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

#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "oracles.hpp"
#include "torodyn/components.hpp"
#include "torodyn/io.hpp"
#include "torodyn/raster.hpp"
#include "torodyn/rng.hpp"

using namespace torodyn;

namespace {
Raster small() { return Raster(64, 64, -1.0, 2.0); }
}  // namespace

TEST_CASE("raster cell mapping") {
  Raster r(64, 64, -1.0, 2.0);
  CHECK(r.col_of(0.0) == 0);
  CHECK(r.col_of(1.0) == 0);    // wraps
  CHECK(r.col_of(-0.01) == 63);
  CHECK(r.row_of(-1.0) == 0);
  CHECK(r.row_of(2.0 - 1e-9) == 63);
  CHECK(r.cell_w() == Catch::Approx(1.0 / 64));
  CHECK(r.cell_h() == Catch::Approx(3.0 / 64));
  CHECK_THROWS_AS(Raster(4, 64, 0.0, 1.0), ValidationError);
  CHECK_THROWS_AS(Raster(64, 64, 1.0, 0.0), ValidationError);
}

TEST_CASE("lamination grid is unit aligned with mid-cell integer heights") {
  Raster g = Raster::lamination_grid(512, 128, 1, 3);
  CHECK(g.ny == 512);
  CHECK(g.unit_aligned());
  CHECK(g.rows_per_unit() == 128);
  // y = 0 sits exactly at a cell center
  int row0 = g.row_of(0.0);
  CHECK(g.y_center(row0) == Catch::Approx(0.0).margin(1e-12));
  // one unit is exactly 128 rows
  CHECK(g.row_of(1.0) - g.row_of(0.0) == 128);
}

TEST_CASE("connected components of a band") {
  RegionMask band = rasterize_rows(small(), 10, 20);
  Labeling lab = label_components(band);
  REQUIRE(lab.components.size() == 1);
  CHECK(lab.components[0].cells == 64 * 11);
  CHECK_FALSE(lab.components[0].touches_bottom);
  CHECK_FALSE(lab.components[0].touches_top);
}

TEST_CASE("connected components of an empty mask") {
  RegionMask empty(small(), MaskRole::kClosed);
  CHECK(label_components(empty).components.empty());
}

TEST_CASE("diagonal adjacency depends on the connectivity role") {
  RegionMask m(small(), MaskRole::kClosed);
  m.set(10, 10);
  m.set(11, 11);
  CHECK(label_components(m).components.size() == 1);
  m.role = MaskRole::kOpen;
  CHECK(label_components(m).components.size() == 2);
}

TEST_CASE("labeling is idempotent") {
  Rng rng(31);
  RegionMask m(small(), MaskRole::kClosed);
  for (int i = 0; i < 500; ++i)
    m.set(static_cast<int>(rng.uniform_int(0, 63)),
          static_cast<int>(rng.uniform_int(0, 63)));
  Labeling a = label_components(m);
  Labeling b = label_components(m);
  CHECK(a.label == b.label);
  CHECK(a.components.size() == b.components.size());
}

TEST_CASE("labeling agrees with the scalar flood-fill oracle") {
  Rng rng(32);
  for (int trial = 0; trial < 20; ++trial) {
    RegionMask m(small(), MaskRole::kClosed);
    oracle::Grid g(64, 64);
    for (int i = 0; i < 400; ++i) {
      int x = static_cast<int>(rng.uniform_int(0, 63));
      int y = static_cast<int>(rng.uniform_int(0, 63));
      m.set(x, y);
      g.at(x, y) = 1;
    }
    CHECK(static_cast<int>(label_components(m).components.size()) ==
          g.components(1, /*eight=*/true));
    m.role = MaskRole::kOpen;
    CHECK(static_cast<int>(label_components(m).components.size()) ==
          g.components(1, /*eight=*/false));
  }
}

TEST_CASE("dilate basics") {
  RegionMask m(small(), MaskRole::kClosed);
  m.set(5, 5);
  RegionMask d = dilate(m);
  CHECK(d.count() == 9);
  for (int dy = -1; dy <= 1; ++dy)
    for (int dx = -1; dx <= 1; ++dx) CHECK(d.get(5 + dx, 5 + dy));

  RegionMask empty(small(), MaskRole::kClosed);
  CHECK(dilate(empty).empty());

  RegionMask full = mask_complement(empty);
  full.role = MaskRole::kClosed;
  CHECK(dilate(full) == full);
}

TEST_CASE("dilate wraps across the x seam") {
  RegionMask m(small(), MaskRole::kClosed);
  m.set(0, 30);
  RegionMask d = dilate(m);
  CHECK(d.get(63, 29));
  CHECK(d.get(63, 30));
  CHECK(d.get(63, 31));
  m = RegionMask(small(), MaskRole::kClosed);
  m.set(63, 30);
  d = dilate(m);
  CHECK(d.get(0, 29));
  CHECK(d.get(0, 30));
  CHECK(d.get(0, 31));
}

TEST_CASE("mask algebra laws") {
  Rng rng(77);
  RegionMask a(small(), MaskRole::kClosed);
  for (int i = 0; i < 800; ++i)
    a.set(static_cast<int>(rng.uniform_int(0, 63)),
          static_cast<int>(rng.uniform_int(0, 63)));
  RegionMask full = mask_union(a, mask_complement(a));
  CHECK(full.count() == 64 * 64);
  RegionMask empty(small(), MaskRole::kClosed);
  CHECK(mask_intersection(a, empty).empty());
  CHECK(mask_complement(a).role == MaskRole::kOpen);

  RegionMask b1 = rasterize_rows(small(), 10, 20);
  RegionMask b2 = rasterize_rows(small(), 15, 20);
  CHECK(mask_difference(b1, b2) == rasterize_rows(small(), 10, 14));

  Raster other(128, 64, -1.0, 2.0);
  RegionMask c(other, MaskRole::kClosed);
  CHECK_THROWS_AS(mask_union(a, c), ValidationError);
}

TEST_CASE("digital Jordan property for a wavy essential curve") {
  Raster r(128, 128, -1.0, 2.0);
  RegionMask curve = rasterize_curve(
      r, [](double t) { return t; },
      [](double t) { return 0.5 + 0.3 * std::sin(2 * std::numbers::pi * t); },
      4 * 128);
  REQUIRE(label_components(curve).components.size() == 1);
  RegionMask comp = mask_complement(curve);
  Labeling lab = label_components(comp);
  REQUIRE(lab.components.size() == 2);
  CHECK(lab.components[0].touches_bottom != lab.components[1].touches_bottom);
}

TEST_CASE("shift_rows moves content vertically") {
  RegionMask band = rasterize_rows(small(), 10, 20);
  RegionMask up = shift_rows(band, 5);
  CHECK(up == rasterize_rows(small(), 15, 25));
  RegionMask down = shift_rows(band, -11);
  CHECK(down == rasterize_rows(small(), 0, 9));
}

TEST_CASE("hausdorff distance in cells") {
  RegionMask a = rasterize_rows(small(), 10, 10);
  RegionMask b = rasterize_rows(small(), 12, 12);
  CHECK(hausdorff_cells(a, b, 5) == 2);
  CHECK(hausdorff_leq(a, b, 2));
  CHECK_FALSE(hausdorff_leq(a, b, 1));
  CHECK(hausdorff_cells(a, a, 5) == 0);
}

TEST_CASE("upsample2x doubles indices") {
  Raster fine(128, 128, -1.0, 2.0);
  RegionMask m(small(), MaskRole::kClosed);
  m.set(3, 7);
  RegionMask u = upsample2x(m, fine);
  CHECK(u.count() == 4);
  CHECK(u.get(6, 14));
  CHECK(u.get(7, 15));
}

TEST_CASE("pbm serialization is well formed") {
  RegionMask m(small(), MaskRole::kClosed);
  m.set(0, 0);
  m.set(63, 63);
  std::string pbm = mask_to_pbm(m);
  CHECK(pbm.substr(0, 3) == "P4\n");
  CHECK(pbm.find("64 64\n") != std::string::npos);
  // 64x64 bits = 8 bytes per row
  std::size_t header = pbm.find("64 64\n") + 6;
  CHECK(pbm.size() - header == 64 * 8);
  // top row is emitted first; cell (63,63) is its last byte's low bit
  CHECK(static_cast<unsigned char>(pbm[header + 7]) == 0x01);
  // bottom row emitted last; cell (0,0) is the high bit of its first byte
  CHECK(static_cast<unsigned char>(pbm[header + 63 * 8]) == 0x80);
}
