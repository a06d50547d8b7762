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

#ifndef TORODYN_CIRCLOID_HPP
#define TORODYN_CIRCLOID_HPP

#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "torodyn/components.hpp"
#include "torodyn/raster.hpp"

namespace torodyn {

// Raster closure: closed-role masks are their own closure; open-role masks
// are closed by one 8-dilation (the cheapest over-approximation that keeps
// sets at >= 2-cell distance separated).
inline RegionMask closure(const RegionMask& m) {
  if (m.role == MaskRole::kClosed) return m;
  return dilate(m);
}

inline int margin_rows(const Raster& r, double margin_frac) {
  int rows = static_cast<int>(margin_frac * r.ny);
  return rows < 1 ? 1 : rows;
}

inline bool intersects_bottom_band(const RegionMask& m, int rows) {
  for (int y = 0; y < rows && y < m.raster.ny; ++y)
    for (int x = 0; x < m.raster.nx; ++x)
      if (m.get(x, y)) return true;
  return false;
}

inline bool intersects_top_band(const RegionMask& m, int rows) {
  for (int y = m.raster.ny - rows; y < m.raster.ny; ++y)
    for (int x = 0; x < m.raster.nx; ++x)
      if (y >= 0 && m.get(x, y)) return true;
  return false;
}

// Essential means: no 4-connected component of the complement spans from the
// bottom row to the top row (the infinity proxies).
inline bool is_essential(const RegionMask& m) {
  RegionMask comp = mask_complement(m);
  comp.role = MaskRole::kOpen;
  Labeling lab = label_components(comp);
  for (const auto& c : lab.components)
    if (c.touches_bottom && c.touches_top) return false;
  return true;
}

namespace detail {

// 4-connected component of `open_set` containing the given boundary row.
// Returns an empty optional if the row has no free cell.
inline std::optional<RegionMask> boundary_component(const RegionMask& open_set,
                                                    bool bottom) {
  Labeling lab = label_components(open_set);
  int want = -1;
  for (const auto& c : lab.components) {
    if ((bottom && c.touches_bottom) || (!bottom && c.touches_top)) {
      if (want != -1) return std::nullopt;  // ambiguous: margin too tight
      want = c.id;
    }
  }
  if (want == -1) return std::nullopt;
  return extract_component(lab, want, MaskRole::kOpen);
}

}  // namespace detail

// Lower component L(U) of an upper generating set U: the 4-connected
// component of the complement of the closure of U that is unbounded below
// (touches the bottom row). U must clear the bottom margin band and have an
// essential closure.
inline RegionMask lower_component(const RegionMask& u,
                                  double margin_frac = 0.1) {
  RegionMask cl = closure(u);
  int rows = margin_rows(u.raster, margin_frac);
  if (intersects_bottom_band(cl, rows))
    throw ValidationError(
        "lower_component: input touches the bottom margin band (not bounded "
        "below on this raster)");
  if (!is_essential(cl))
    throw ValidationError(
        "lower_component: closure is not essential (not a generating set)");
  RegionMask comp = mask_complement(cl);
  auto res = detail::boundary_component(comp, /*bottom=*/true);
  if (!res)
    throw ValidationError("lower_component: no unique bottom component");
  return *res;
}

// Mirror image: upper component U(L) of a lower generating set.
inline RegionMask upper_component(const RegionMask& l,
                                  double margin_frac = 0.1) {
  RegionMask cl = closure(l);
  int rows = margin_rows(l.raster, margin_frac);
  if (intersects_top_band(cl, rows))
    throw ValidationError(
        "upper_component: input touches the top margin band (not bounded "
        "above on this raster)");
  if (!is_essential(cl))
    throw ValidationError(
        "upper_component: closure is not essential (not a generating set)");
  RegionMask comp = mask_complement(cl);
  auto res = detail::boundary_component(comp, /*bottom=*/false);
  if (!res)
    throw ValidationError("upper_component: no unique top component");
  return *res;
}

// A compact connected essential set whose complement has exactly two
// components, one unbounded below and one unbounded above. Hemispheres are
// cached on construction.
struct AnnularContinuum {
  RegionMask mask;   // closed role
  RegionMask upper;  // open role, touches top
  RegionMask lower;  // open role, touches bottom
};

struct AnnularDiagnostics {
  bool ok = false;
  bool nonempty = false;
  bool connected = false;
  int complement_components = 0;
  bool boundary_touching_ok = false;
  std::string note;
};

inline AnnularDiagnostics annular_diagnostics(const RegionMask& m) {
  AnnularDiagnostics d;
  d.nonempty = !m.empty();
  if (!d.nonempty) {
    d.note = "empty mask";
    return d;
  }
  RegionMask closed = m;
  closed.role = MaskRole::kClosed;
  Labeling body = label_components(closed);
  d.connected = body.components.size() == 1;
  RegionMask comp = mask_complement(closed);
  Labeling lab = label_components(comp);
  d.complement_components = static_cast<int>(lab.components.size());
  int bottoms = 0, tops = 0, spans = 0;
  for (const auto& c : lab.components) {
    if (c.touches_bottom && c.touches_top)
      ++spans;
    else if (c.touches_bottom)
      ++bottoms;
    else if (c.touches_top)
      ++tops;
  }
  d.boundary_touching_ok =
      (d.complement_components == 2 && bottoms == 1 && tops == 1 && spans == 0);
  d.ok = d.nonempty && d.connected && d.boundary_touching_ok;
  if (!d.connected)
    d.note = "mask not connected";
  else if (spans > 0)
    d.note = "complement component spans bottom to top (not essential)";
  else if (d.complement_components != 2)
    d.note = "complement has " + std::to_string(d.complement_components) +
             " components, expected 2";
  return d;
}

inline bool is_annular_continuum(const RegionMask& m) {
  return annular_diagnostics(m).ok;
}

inline AnnularContinuum make_annular_continuum(const RegionMask& m) {
  AnnularDiagnostics d = annular_diagnostics(m);
  if (!d.ok)
    throw ConstructionError("not an annular continuum: " + d.note);
  RegionMask closed = m;
  closed.role = MaskRole::kClosed;
  RegionMask comp = mask_complement(closed);
  Labeling lab = label_components(comp);
  AnnularContinuum a{closed, RegionMask(), RegionMask()};
  for (const auto& c : lab.components) {
    if (c.touches_top)
      a.upper = extract_component(lab, c.id, MaskRole::kOpen);
    else
      a.lower = extract_component(lab, c.id, MaskRole::kOpen);
  }
  return a;
}

// Reflexive-pair test: the hemispheres regenerate each other. This is the
// raster characterization of a circloid.
inline bool is_circloid(const AnnularContinuum& c,
                        double margin_frac = 0.1) {
  RegionMask u2 = upper_component(c.lower, margin_frac);
  if (!(u2 == c.upper)) return false;
  RegionMask l2 = lower_component(c.upper, margin_frac);
  return l2 == c.lower;
}

struct Circloid {
  AnnularContinuum continuum;
  bool reflexive_verified = false;

  const RegionMask& mask() const { return continuum.mask; }
};

namespace detail {

inline Circloid finish_circloid(RegionMask cmask, double margin_frac,
                                const char* who) {
  cmask.role = MaskRole::kClosed;
  AnnularDiagnostics d = annular_diagnostics(cmask);
  if (!d.ok) {
    std::ostringstream os;
    os << who << ": result fails annular-continuum validation at this "
       << "resolution (" << d.note << ")";
    throw ConstructionError(os.str());
  }
  AnnularContinuum a = make_annular_continuum(cmask);
  Circloid c{a, false};
  if (!is_circloid(a, margin_frac)) {
    std::ostringstream os;
    os << who << ": result fails the reflexive-pair test at this resolution";
    throw ConstructionError(os.str());
  }
  c.reflexive_verified = true;
  return c;
}

}  // namespace detail

// C^-(U): the circloid generated downward from an upper generating set,
// the complement of UL(U) and LUL(U).
inline Circloid c_minus(const RegionMask& u, double margin_frac = 0.1) {
  RegionMask cl = closure(u);
  int rows = margin_rows(u.raster, margin_frac);
  if (intersects_bottom_band(cl, rows) || intersects_top_band(cl, rows))
    throw ValidationError("c_minus: generating set violates the margin");
  RegionMask w = lower_component(u, margin_frac);     // L(U)
  RegionMask x = upper_component(w, margin_frac);     // UL(U)
  RegionMask y = lower_component(x, margin_frac);     // LUL(U)
  RegionMask cmask = mask_complement(mask_union(x, y));
  return detail::finish_circloid(std::move(cmask), margin_frac, "c_minus");
}

// C^+(L): mirror construction from a lower generating set.
inline Circloid c_plus(const RegionMask& l, double margin_frac = 0.1) {
  RegionMask cl = closure(l);
  int rows = margin_rows(l.raster, margin_frac);
  if (intersects_bottom_band(cl, rows) || intersects_top_band(cl, rows))
    throw ValidationError("c_plus: generating set violates the margin");
  RegionMask v = upper_component(l, margin_frac);     // U(L)
  RegionMask y = lower_component(v, margin_frac);     // LU(L)
  RegionMask x = upper_component(y, margin_frac);     // ULU(L)
  RegionMask cmask = mask_complement(mask_union(x, y));
  return detail::finish_circloid(std::move(cmask), margin_frac, "c_plus");
}

// Cells of the closed set 8-adjacent to the open set V.
inline RegionMask boundary_of_open(const RegionMask& v) {
  RegionMask b = mask_difference(dilate(v), v);
  b.role = MaskRole::kClosed;
  return b;
}

// True if some cell of m has its full 8-neighborhood inside m (cells on the
// raster boundary never count).
inline bool has_interior_cell(const RegionMask& m) {
  const int nx = m.raster.nx, ny = m.raster.ny;
  for (int y = 1; y + 1 < ny; ++y)
    for (int x = 0; x < nx; ++x) {
      if (!m.get(x, y)) continue;
      bool full = true;
      for (int dy = -1; dy <= 1 && full; ++dy)
        for (int dx = -1; dx <= 1; ++dx) {
          int xx = (x + dx + nx) % nx;
          if (!m.get(xx, y + dy)) {
            full = false;
            break;
          }
        }
      if (full) return true;
    }
  return false;
}

// For an annular continuum with empty interior, its unique circloid: the
// cells adjacent to both hemispheres. Cross-checked against both generated
// circloids before returning.
inline Circloid thin_circloid(const AnnularContinuum& a,
                              double margin_frac = 0.1) {
  if (has_interior_cell(a.mask))
    throw ValidationError("thin_circloid: continuum has nonempty interior");
  RegionMask c = mask_intersection(boundary_of_open(a.upper),
                                   boundary_of_open(a.lower));
  c.role = MaskRole::kClosed;
  Circloid plus = c_plus(a.mask, margin_frac);
  Circloid minus = c_minus(a.mask, margin_frac);
  if (!(c == plus.mask()) || !(c == minus.mask()))
    throw ConstructionError(
        "thin_circloid: boundary formula disagrees with the generated "
        "circloids at this resolution");
  return plus;
}

// Order relations between annular continua on the same raster:
//   A <= B  iff  B misses the lower hemisphere of A;
//   A <  B  iff  B lies inside the upper hemisphere of A.
struct OrderRelation {
  bool below_eq = false;     // A <= B
  bool below_strict = false; // A <  B
  bool above_eq = false;     // B <= A
  bool above_strict = false; // B <  A

  enum class Tag {
    kBelowOrTouching,
    kStrictlyBelow,
    kAboveOrTouching,
    kStrictlyAbove,
    kIncomparable,
  };

  Tag tag() const {
    if (below_strict) return Tag::kStrictlyBelow;
    if (above_strict) return Tag::kStrictlyAbove;
    if (below_eq) return Tag::kBelowOrTouching;
    if (above_eq) return Tag::kAboveOrTouching;
    return Tag::kIncomparable;
  }
};

inline OrderRelation region_order(const AnnularContinuum& a,
                                  const AnnularContinuum& b) {
  require_same_raster(a.mask, b.mask);
  OrderRelation r;
  r.below_eq = mask_disjoint(b.mask, a.lower);
  r.below_strict = mask_subset(b.mask, a.upper);
  r.above_eq = mask_disjoint(b.mask, a.upper);
  r.above_strict = mask_subset(b.mask, a.lower);
  return r;
}

enum class IntervalKind { kOpen, kClosed };

// Open interval (A,B) = U(A) n L(B); closed [A,B] = complement of
// (L(A) u U(B)). Requires A <= B.
inline RegionMask interval(const AnnularContinuum& a,
                           const AnnularContinuum& b, IntervalKind kind) {
  require_same_raster(a.mask, b.mask);
  if (!region_order(a, b).below_eq)
    throw ValidationError("interval: order violated (need A <= B)");
  if (kind == IntervalKind::kOpen) {
    RegionMask m = mask_intersection(a.upper, b.lower);
    m.role = MaskRole::kOpen;
    return m;
  }
  RegionMask m = mask_complement(mask_union(a.lower, b.upper));
  m.role = MaskRole::kClosed;
  return m;
}

// ---------------------------------------------------------------------------
// Essential loop detection in an open set (4-connectivity).

struct EssentialLoop {
  bool exists = false;
  std::vector<std::pair<int, int>> witness;  // cells of a shortest wrapping path
};

namespace detail {

// BFS over the x-unrolled cover restricted to a window of `copies` widths;
// returns the shortest path from (sx, sy) to (sx + nx, sy) if one exists.
inline std::vector<std::pair<int, int>> wrap_path(const RegionMask& m, int sx,
                                                  int sy, int copies) {
  const int nx = m.raster.nx, ny = m.raster.ny;
  const int width = copies * nx;
  const int offset = (copies / 2) * nx;  // start in the middle copy
  std::vector<std::int32_t> prev(static_cast<std::size_t>(width) * ny, -2);
  auto idx = [&](int cx, int cy) {
    return static_cast<std::size_t>(cy) * width + cx;
  };
  int start = sx + offset;
  int target = start + nx;
  std::vector<std::int32_t> queue;
  queue.push_back(static_cast<std::int32_t>(idx(start, sy)));
  prev[idx(start, sy)] = -1;
  std::size_t head = 0;
  while (head < queue.size()) {
    std::int32_t cur = queue[head++];
    int cy = static_cast<int>(cur / width);
    int cx = static_cast<int>(cur % width);
    if (cx == target && cy == sy) {
      std::vector<std::pair<int, int>> path;
      std::int32_t walk = cur;
      while (walk != -1) {
        int wy = static_cast<int>(walk / width);
        int wx = static_cast<int>(walk % width);
        path.emplace_back(((wx % nx) + nx) % nx, wy);
        walk = prev[idx(wx, wy)];
      }
      return path;
    }
    const int dx[4] = {1, -1, 0, 0};
    const int dy[4] = {0, 0, 1, -1};
    for (int d = 0; d < 4; ++d) {
      int vx = cx + dx[d], vy = cy + dy[d];
      if (vx < 0 || vx >= width || vy < 0 || vy >= ny) continue;
      if (prev[idx(vx, vy)] != -2) continue;
      if (!m.get(vx % nx, vy)) continue;
      prev[idx(vx, vy)] = cur;
      queue.push_back(static_cast<std::int32_t>(idx(vx, vy)));
    }
  }
  return {};
}

}  // namespace detail

// True iff some 4-connected component of the open set wraps the x direction;
// detected by tracking winding offsets during the flood fill, witnessed by a
// shortest wrapping path in the unrolled cover.
inline EssentialLoop essential_loop_exists(const RegionMask& open_set) {
  const int nx = open_set.raster.nx, ny = open_set.raster.ny;
  std::vector<std::int32_t> offset(static_cast<std::size_t>(nx) * ny,
                                   INT32_MIN);
  EssentialLoop out;
  std::vector<std::int32_t> queue;
  for (int sy = 0; sy < ny && !out.exists; ++sy) {
    for (int sx = 0; sx < nx && !out.exists; ++sx) {
      if (!open_set.get(sx, sy)) continue;
      std::size_t sidx = static_cast<std::size_t>(sy) * nx + sx;
      if (offset[sidx] != INT32_MIN) continue;
      queue.clear();
      offset[sidx] = 0;
      queue.push_back(static_cast<std::int32_t>(sidx));
      std::size_t head = 0;
      while (head < queue.size() && !out.exists) {
        std::int32_t cur = queue[head++];
        int cy = cur / nx, cx = cur % nx;
        std::int32_t coff = offset[cur];
        const int dx[4] = {1, -1, 0, 0};
        const int dy[4] = {0, 0, 1, -1};
        for (int d = 0; d < 4; ++d) {
          int vx = cx + dx[d], vy = cy + dy[d];
          if (vy < 0 || vy >= ny) continue;
          std::int32_t noff = coff;
          if (vx < 0) {
            vx = nx - 1;
            noff -= 1;
          } else if (vx >= nx) {
            vx = 0;
            noff += 1;
          }
          if (!open_set.get(vx, vy)) continue;
          std::size_t vidx = static_cast<std::size_t>(vy) * nx + vx;
          if (offset[vidx] == INT32_MIN) {
            offset[vidx] = noff;
            queue.push_back(static_cast<std::int32_t>(vidx));
          } else if (offset[vidx] != noff) {
            out.exists = true;  // same cell reached with two windings
            break;
          }
        }
      }
      if (out.exists) {
        for (int copies : {3, 5, 9}) {
          out.witness = detail::wrap_path(open_set, sx, sy, copies);
          if (!out.witness.empty()) break;
        }
      }
    }
  }
  return out;
}

}  // namespace torodyn

#endif  // TORODYN_CIRCLOID_HPP
