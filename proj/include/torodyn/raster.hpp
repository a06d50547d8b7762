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

#ifndef TORODYN_RASTER_HPP
#define TORODYN_RASTER_HPP

#include <cmath>
#include <cstdint>
#include <vector>

#include "torodyn/error.hpp"
#include "torodyn/geometry.hpp"

namespace torodyn {

// A discretization of the truncated annulus T^1 x [y_min, y_max]: nx cells in
// the wrapping x direction over [0,1), ny rows of height (y_max-y_min)/ny.
// The bottom and top rows stand in for -infinity / +infinity.
struct Raster {
  int nx = 512;
  int ny = 512;
  double y_min = -1.0;
  double y_max = 2.0;

  Raster() = default;
  Raster(int nx_, int ny_, double y_min_, double y_max_)
      : nx(nx_), ny(ny_), y_min(y_min_), y_max(y_max_) {
    if (nx < 8 || ny < 8) throw ValidationError("Raster: nx, ny must be >= 8");
    if (!(y_min < y_max)) throw ValidationError("Raster: y_min < y_max required");
  }

  double cell_w() const { return 1.0 / nx; }
  double cell_h() const { return (y_max - y_min) / ny; }

  int col_of(double x) const {
    double f = x - std::floor(x);
    int c = static_cast<int>(f * nx);
    return c >= nx ? nx - 1 : c;
  }
  // Row of y, clamped to the raster; y outside [y_min, y_max) lands in the
  // boundary rows (the infinity proxies).
  int row_of(double y) const {
    double t = (y - y_min) / (y_max - y_min) * ny;
    int r = static_cast<int>(std::floor(t));
    if (r < 0) r = 0;
    if (r >= ny) r = ny - 1;
    return r;
  }
  bool y_in_range(double y) const { return y >= y_min && y < y_max; }
  double x_center(int col) const { return (col + 0.5) / nx; }
  double y_center(int row) const { return y_min + (row + 0.5) * cell_h(); }

  // True if one vertical unit is an integer number of rows, so that the deck
  // translation T(x,y) = (x, y+1) is an exact row shift.
  bool unit_aligned() const {
    double rpu = ny / (y_max - y_min);
    return std::abs(rpu - std::round(rpu)) < 1e-9;
  }
  int rows_per_unit() const {
    if (!unit_aligned())
      throw ValidationError("raster is not unit-aligned");
    return static_cast<int>(std::round(ny / (y_max - y_min)));
  }

  // Grid used by the lamination builder: integer heights fall mid-cell, so
  // curves at rational heights never sit on a row boundary, and one vertical
  // unit is exactly rows_per_unit rows.
  static Raster lamination_grid(int nx, int rows_per_unit, int units_below,
                                int units_above) {
    double h = 1.0 / rows_per_unit;
    int ny = rows_per_unit * (units_below + units_above);
    return Raster(nx, ny, -units_below - h / 2, units_above - h / 2);
  }

  friend bool operator==(const Raster& a, const Raster& b) {
    return a.nx == b.nx && a.ny == b.ny && a.y_min == b.y_min &&
           a.y_max == b.y_max;
  }
};

// Connectivity role of a mask. Closed sets use 8-connectivity, open sets
// (complements) use 4-connectivity; mixing the two keeps the digital Jordan
// property: an 8-connected essential curve separates its 4-connected
// complement into exactly two pieces.
enum class MaskRole { kClosed, kOpen };

// One bit per raster cell. x wraps; y does not.
struct RegionMask {
  Raster raster;
  MaskRole role = MaskRole::kClosed;
  std::vector<std::uint64_t> words;

  RegionMask() = default;
  RegionMask(const Raster& r, MaskRole ro)
      : raster(r), role(ro), words(word_count(r), 0) {}

  static std::size_t words_per_row(const Raster& r) {
    return (static_cast<std::size_t>(r.nx) + 63) / 64;
  }
  static std::size_t word_count(const Raster& r) {
    return words_per_row(r) * static_cast<std::size_t>(r.ny);
  }

  bool get(int x, int y) const {
    std::size_t idx = static_cast<std::size_t>(y) * words_per_row(raster) +
                      static_cast<std::size_t>(x >> 6);
    return (words[idx] >> (x & 63)) & 1u;
  }
  void set(int x, int y, bool v = true) {
    std::size_t idx = static_cast<std::size_t>(y) * words_per_row(raster) +
                      static_cast<std::size_t>(x >> 6);
    if (v)
      words[idx] |= (std::uint64_t{1} << (x & 63));
    else
      words[idx] &= ~(std::uint64_t{1} << (x & 63));
  }
  void set_point(double x, double y) {
    if (!raster.y_in_range(y)) return;
    set(raster.col_of(x), raster.row_of(y));
  }

  long long count() const {
    long long c = 0;
    for (auto w : words) c += __builtin_popcountll(w);
    return c;
  }
  bool empty() const {
    for (auto w : words)
      if (w) return false;
    return true;
  }

  friend bool operator==(const RegionMask& a, const RegionMask& b) {
    return a.raster == b.raster && a.words == b.words;
  }
};

namespace detail {

// Clears the unused high bits of the last word in each row.
inline void clear_row_padding(RegionMask& m) {
  const int nx = m.raster.nx;
  if ((nx & 63) == 0) return;
  const std::size_t wpr = RegionMask::words_per_row(m.raster);
  const std::uint64_t tail = (std::uint64_t{1} << (nx & 63)) - 1;
  for (int y = 0; y < m.raster.ny; ++y) m.words[y * wpr + wpr - 1] &= tail;
}

// OR of a row with itself shifted one cell left and right, wrapping in x.
inline void smear_row(const std::uint64_t* src, std::uint64_t* dst,
                      std::size_t wpr, int nx) {
  const int tail_bits = ((nx - 1) & 63);
  for (std::size_t i = 0; i < wpr; ++i) {
    std::uint64_t w = src[i];
    std::uint64_t left = w << 1;   // cell x -> x+1
    std::uint64_t right = w >> 1;  // cell x -> x-1
    // carries between words
    std::uint64_t carry_in_left =
        (i == 0) ? ((src[wpr - 1] >> tail_bits) & 1u) : (src[i - 1] >> 63);
    left |= carry_in_left;
    std::uint64_t carry_in_right;
    if (i + 1 < wpr)
      carry_in_right = (src[i + 1] & 1u) << 63;
    else
      carry_in_right = 0;
    right |= carry_in_right;
    dst[i] = w | left | right;
  }
  // wrap of the highest cell into column 0 and of column 0 into the highest
  std::uint64_t top = (src[(nx - 1) >> 6] >> ((nx - 1) & 63)) & 1u;
  if (top) dst[0] |= 1u;
  std::uint64_t low = src[0] & 1u;
  if (low) dst[(nx - 1) >> 6] |= (std::uint64_t{1} << ((nx - 1) & 63));
}

}  // namespace detail

inline void require_same_raster(const RegionMask& a, const RegionMask& b) {
  if (!(a.raster == b.raster))
    throw ValidationError("region masks live on different rasters");
}

enum class MaskOp { kUnion, kIntersection, kDifference, kComplement };

inline RegionMask mask_union(const RegionMask& a, const RegionMask& b) {
  require_same_raster(a, b);
  RegionMask r = a;
  for (std::size_t i = 0; i < r.words.size(); ++i) r.words[i] |= b.words[i];
  return r;
}

inline RegionMask mask_intersection(const RegionMask& a, const RegionMask& b) {
  require_same_raster(a, b);
  RegionMask r = a;
  for (std::size_t i = 0; i < r.words.size(); ++i) r.words[i] &= b.words[i];
  return r;
}

inline RegionMask mask_difference(const RegionMask& a, const RegionMask& b) {
  require_same_raster(a, b);
  RegionMask r = a;
  for (std::size_t i = 0; i < r.words.size(); ++i) r.words[i] &= ~b.words[i];
  return r;
}

// Complement flips the connectivity role.
inline RegionMask mask_complement(const RegionMask& a) {
  RegionMask r = a;
  r.role = (a.role == MaskRole::kClosed) ? MaskRole::kOpen : MaskRole::kClosed;
  for (auto& w : r.words) w = ~w;
  detail::clear_row_padding(r);
  return r;
}

inline RegionMask mask_algebra(const RegionMask& a, const RegionMask& b,
                               MaskOp op) {
  switch (op) {
    case MaskOp::kUnion:        return mask_union(a, b);
    case MaskOp::kIntersection: return mask_intersection(a, b);
    case MaskOp::kDifference:   return mask_difference(a, b);
    case MaskOp::kComplement:   return mask_complement(a);
  }
  throw ValidationError("unknown mask op");
}

inline bool mask_subset(const RegionMask& a, const RegionMask& b) {
  require_same_raster(a, b);
  for (std::size_t i = 0; i < a.words.size(); ++i)
    if (a.words[i] & ~b.words[i]) return false;
  return true;
}

inline bool mask_disjoint(const RegionMask& a, const RegionMask& b) {
  require_same_raster(a, b);
  for (std::size_t i = 0; i < a.words.size(); ++i)
    if (a.words[i] & b.words[i]) return false;
  return true;
}

// Sets each set cell's full 8-neighborhood. This is the raster closure
// operator; result is a closed-role mask.
inline RegionMask dilate(const RegionMask& m) {
  const std::size_t wpr = RegionMask::words_per_row(m.raster);
  const int ny = m.raster.ny;
  RegionMask out(m.raster, MaskRole::kClosed);
  std::vector<std::uint64_t> smeared(m.words.size());
  for (int y = 0; y < ny; ++y)
    detail::smear_row(&m.words[y * wpr], &smeared[y * wpr], wpr, m.raster.nx);
  for (int y = 0; y < ny; ++y) {
    for (std::size_t i = 0; i < wpr; ++i) {
      std::uint64_t w = smeared[y * wpr + i];
      if (y > 0) w |= smeared[(y - 1) * wpr + i];
      if (y + 1 < ny) w |= smeared[(y + 1) * wpr + i];
      out.words[y * wpr + i] = w;
    }
  }
  detail::clear_row_padding(out);
  return out;
}

// Vertical shift by k rows (positive = up). Vacated rows are empty; content
// shifted past the boundary is dropped.
inline RegionMask shift_rows(const RegionMask& m, int k) {
  RegionMask out(m.raster, m.role);
  const std::size_t wpr = RegionMask::words_per_row(m.raster);
  for (int y = 0; y < m.raster.ny; ++y) {
    int src = y - k;
    if (src < 0 || src >= m.raster.ny) continue;
    for (std::size_t i = 0; i < wpr; ++i)
      out.words[y * wpr + i] = m.words[src * wpr + i];
  }
  return out;
}

// L-infinity (Chebyshev) distance in cells: true iff every cell of a lies
// within the k-fold 8-dilation of b and vice versa. hausdorff_cells returns
// the smallest such k, or cap+1 if the masks are farther apart (or one is
// empty and the other not).
inline bool hausdorff_leq(const RegionMask& a, const RegionMask& b, int k) {
  require_same_raster(a, b);
  RegionMask da = a, db = b;
  for (int i = 0; i < k; ++i) {
    da = dilate(da);
    db = dilate(db);
  }
  return mask_subset(a, db) && mask_subset(b, da);
}

inline int hausdorff_cells(const RegionMask& a, const RegionMask& b, int cap) {
  require_same_raster(a, b);
  if (a.empty() != b.empty()) return cap + 1;
  RegionMask da = a, db = b;
  for (int k = 0; k <= cap; ++k) {
    if (mask_subset(a, db) && mask_subset(b, da)) return k;
    da = dilate(da);
    db = dilate(db);
  }
  return cap + 1;
}

// Index-doubling upsample onto a raster with 2x cells in each direction.
inline RegionMask upsample2x(const RegionMask& m, const Raster& fine) {
  if (fine.nx != 2 * m.raster.nx || fine.ny != 2 * m.raster.ny)
    throw ValidationError("upsample2x: fine raster must double both counts");
  RegionMask out(fine, m.role);
  for (int y = 0; y < m.raster.ny; ++y)
    for (int x = 0; x < m.raster.nx; ++x)
      if (m.get(x, y)) {
        out.set(2 * x, 2 * y);
        out.set(2 * x + 1, 2 * y);
        out.set(2 * x, 2 * y + 1);
        out.set(2 * x + 1, 2 * y + 1);
      }
  return out;
}

// --------------------------------------------------------------------------
// Geometric rasterizers (used by tests and the lamination builder).

inline RegionMask rasterize_band(const Raster& r, double y0, double y1) {
  RegionMask m(r, MaskRole::kClosed);
  for (int row = 0; row < r.ny; ++row) {
    double yc = r.y_center(row);
    if (yc >= y0 && yc <= y1)
      for (int x = 0; x < r.nx; ++x) m.set(x, row);
  }
  return m;
}

inline RegionMask rasterize_rows(const Raster& r, int row0, int row1) {
  RegionMask m(r, MaskRole::kClosed);
  for (int row = std::max(0, row0); row <= std::min(r.ny - 1, row1); ++row)
    for (int x = 0; x < r.nx; ++x) m.set(x, row);
  return m;
}

inline RegionMask rasterize_disk(const Raster& r, double cx, double cy,
                                 double radius) {
  RegionMask m(r, MaskRole::kClosed);
  for (int row = 0; row < r.ny; ++row) {
    double dy = r.y_center(row) - cy;
    if (std::abs(dy) > radius) continue;
    for (int x = 0; x < r.nx; ++x) {
      double dx = r.x_center(x) - cx;
      dx -= std::round(dx);  // wrap
      if (dx * dx + dy * dy <= radius * radius) m.set(x, row);
    }
  }
  return m;
}

// Plots t -> (x(t), y(t)) for t in [0,1) at `samples` points.
template <typename FnX, typename FnY>
inline RegionMask rasterize_curve(const Raster& r, FnX&& fx, FnY&& fy,
                                  int samples) {
  RegionMask m(r, MaskRole::kClosed);
  for (int i = 0; i < samples; ++i) {
    double t = static_cast<double>(i) / samples;
    m.set_point(fx(t), fy(t));
  }
  return m;
}

// 4-connected staircase of the graph y = fn(x): each column holds the run of
// rows between the previous column's row and its own. This is the thin
// representation under which an essential curve is its own circloid.
template <typename Fn>
inline RegionMask rasterize_graph(const Raster& r, Fn&& fn) {
  RegionMask m(r, MaskRole::kClosed);
  std::vector<int> rows(r.nx);
  for (int x = 0; x < r.nx; ++x) rows[x] = r.row_of(fn(r.x_center(x)));
  for (int x = 0; x < r.nx; ++x) {
    int prev = rows[(x + r.nx - 1) % r.nx];
    for (int y = std::min(prev, rows[x]); y <= std::max(prev, rows[x]); ++y)
      m.set(x, y);
  }
  return m;
}

// Horizontal circle at height y (full width of the raster).
inline RegionMask rasterize_circle(const Raster& r, double y) {
  RegionMask m(r, MaskRole::kClosed);
  if (!r.y_in_range(y)) return m;
  int row = r.row_of(y);
  for (int x = 0; x < r.nx; ++x) m.set(x, row);
  return m;
}

}  // namespace torodyn

#endif  // TORODYN_RASTER_HPP
