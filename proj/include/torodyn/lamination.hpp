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

#ifndef TORODYN_LAMINATION_HPP
#define TORODYN_LAMINATION_HPP

#include <optional>
#include <sstream>
#include <vector>

#include "torodyn/circloid.hpp"
#include "torodyn/io.hpp"
#include "torodyn/mapdef.hpp"
#include "torodyn/rotation.hpp"
#include "torodyn/semiconj1d.hpp"

namespace torodyn {

struct ArOptions {
  long long N = 200;        // orbit truncation |n| <= N
  double c = 0.25;          // deviation bound: the result must stay in the
                            // band [r - c - delta, r + c + delta]
  int band_margin_cells = 2;  // delta, in cells
  int samples_per_cell = 4;   // circle sampling density (times nx)
  // stop a direction after this many consecutive steps that added no new
  // cells (0 = run the full truncation)
  int stall = 0;
};

namespace detail {

inline void plot_points(RegionMask& m, const std::vector<PlaneVec>& pts) {
  for (PlaneVec p : pts) m.set_point(p.x, p.y);
}

inline void check_band(const std::vector<PlaneVec>& pts, double lo, double hi,
                       const char* who) {
  for (PlaneVec p : pts)
    if (p.y < lo || p.y > hi) {
      std::ostringstream os;
      os << who << ": orbit escapes the deviation band [" << lo << ", " << hi
         << "] at y = " << p.y
         << " (wrong deviation constant or wrong lift selection)";
      throw ConstructionError(os.str());
    }
}

}  // namespace detail

// A_r: the union over |n| <= N of the n-th image of the horizontal circle at
// height r - n*rho2, plotted with one-cell thickening. For maps commuting
// with vertical translations the images are advanced incrementally (exactly
// equivalent in real arithmetic, far better conditioned); otherwise each
// term iterates from its own starting circle.
inline RegionMask build_A_r(const LiftMap& f_hat, double r, double rho2,
                            const Raster& raster, const ArOptions& opts) {
  if (opts.N > 0 && !f_hat.has_inverse())
    throw IterationError("build_A_r: inverse required for backward images");
  const int S = opts.samples_per_cell * raster.nx;
  const double band_lo =
      r - opts.c - opts.band_margin_cells * raster.cell_h() - 1e-9;
  const double band_hi =
      r + opts.c + opts.band_margin_cells * raster.cell_h() + 1e-9;
  if (band_lo < raster.y_min || band_hi >= raster.y_max)
    throw ConstructionError(
        "build_A_r: deviation band does not fit the raster; enlarge the "
        "raster or lower the level");

  RegionMask acc(raster, MaskRole::kClosed);
  std::vector<PlaneVec> pts(S);
  auto reset_circle = [&](double height) {
    for (int j = 0; j < S; ++j)
      pts[j] = PlaneVec{static_cast<double>(j) / S, height};
  };

  reset_circle(r);
  detail::plot_points(acc, pts);

  auto run_direction = [&](bool backward) {
    long long unchanged = 0;
    if (f_hat.vertical_shift_equivariant) {
      reset_circle(r);
      for (long long k = 1; k <= opts.N; ++k) {
        for (PlaneVec& p : pts) {
          p = backward ? f_hat.inv(p) : f_hat.fwd(p);
          p.y += backward ? rho2 : -rho2;
        }
        detail::check_band(pts, band_lo, band_hi, "build_A_r");
        long long before = acc.count();
        detail::plot_points(acc, pts);
        unchanged = (acc.count() == before) ? unchanged + 1 : 0;
        if (opts.stall > 0 && unchanged >= opts.stall) break;
      }
    } else {
      for (long long k = 1; k <= opts.N; ++k) {
        long long n = backward ? -k : k;
        reset_circle(r - static_cast<double>(n) * rho2);
        for (PlaneVec& p : pts) p = iterate_lift(f_hat, n, p);
        detail::check_band(pts, band_lo, band_hi, "build_A_r");
        long long before = acc.count();
        detail::plot_points(acc, pts);
        unchanged = (acc.count() == before) ? unchanged + 1 : 0;
        if (opts.stall > 0 && unchanged >= opts.stall) break;
      }
    }
  };
  run_direction(false);
  if (opts.N > 0) run_direction(true);

  RegionMask thick = dilate(acc);  // keeps the plotted curves connected
  // containment in the band, in rows
  int lo_row = raster.row_of(band_lo);
  int hi_row = raster.row_of(band_hi);
  for (int y = 0; y < raster.ny; ++y) {
    if (y >= lo_row - 1 && y <= hi_row + 1) continue;
    for (int x = 0; x < raster.nx; ++x)
      if (thick.get(x, y))
        throw ConstructionError("build_A_r: thickened union escapes the band");
  }
  return thick;
}

inline Circloid build_C_r(const RegionMask& a_r, double margin_frac = 0.1) {
  return c_plus(a_r, margin_frac);
}

// Image of a mask under a lift, sampled on a sub-grid of each set cell.
inline RegionMask map_mask_through(const LiftMap& f, const RegionMask& m,
                                   int subsamples = 2) {
  RegionMask out(m.raster, MaskRole::kClosed);
  const int nx = m.raster.nx, ny = m.raster.ny;
  for (int y = 0; y < ny; ++y)
    for (int x = 0; x < nx; ++x) {
      if (!m.get(x, y)) continue;
      for (int sy = 0; sy < subsamples; ++sy)
        for (int sx = 0; sx < subsamples; ++sx) {
          double px = (x + (sx + 0.5) / subsamples) / nx;
          double py = m.raster.y_min +
                      (y + (sy + 0.5) / subsamples) * m.raster.cell_h();
          PlaneVec img = f.fwd({px, py});
          out.set_point(img.x, img.y);
        }
    }
  return out;
}

struct LaminationOptions {
  int level_count = 64;
  long long N = 200;
  int stall = 48;
  int samples_per_cell = 4;
  double tol_pr = 1e-2;
  int hausdorff_cells = 2;
  long long bmm_N = 10000;
  int bmm_samples = 16;
  long long rot_N = 100000;
  int rot_samples = 16;
  std::uint64_t seed = 12345;
  double margin_frac = 0.1;
  bool verify = true;
  // levels to re-verify for invariance and translation; -1 = all
  int verify_levels = -1;
  int invariance_subsamples = 2;
};

// The ordered family of circloids C_r built from iterated horizontal
// circles, one level per 1/level_count step over [0, cover_degree).
struct Lamination {
  std::vector<double> levels;
  std::vector<Circloid> circloids;
  double rho2 = 0.0;
  double c = 0.0;
  long long N = 0;
  Raster raster;
  int level_count = 64;
  int cover_degree = 1;
  RotationReport rotation;
  LiftMap f_hat;

  const RegionMask& mask(int i) const { return circloids[i].mask(); }
};

namespace detail {

inline RegionMask build_level_mask(const LiftMap& f_hat, double r, double rho2,
                                   const Raster& raster,
                                   const LaminationOptions& o, double c) {
  ArOptions ao;
  ao.N = o.N;
  ao.c = c;
  ao.samples_per_cell = o.samples_per_cell;
  ao.stall = o.stall;
  return build_A_r(f_hat, r, rho2, raster, ao);
}

}  // namespace detail

// Full lamination build with gates and property verification. Throws
// ConstructionError with the offending level pair when a property fails
// beyond tolerance.
inline Lamination build_lamination(const MapDef& f, const Raster& raster,
                                   const LaminationOptions& opts = {}) {
  LiftMap lift = to_lift(f);
  if (!lift.has_inverse())
    throw IterationError("build_lamination: map must provide an inverse");

  Lamination lam;
  lam.raster = raster;
  lam.level_count = opts.level_count;
  lam.N = opts.N;

  // pseudo-rotation gate
  lam.rotation = rotation_set_estimate(lift, opts.rot_samples, opts.rot_N,
                                       opts.seed, opts.tol_pr);
  if (!lam.rotation.is_pseudo_rotation) {
    std::ostringstream os;
    os << "build_lamination: rotation estimates spread "
       << lam.rotation.spread << " exceeds the pseudo-rotation tolerance "
       << opts.tol_pr;
    throw ConstructionError(os.str());
  }
  PlaneVec rho = lam.rotation.mean;

  // vertical lift selection: vertical rotation number in [0, 1), with
  // near-integer estimates snapped just below zero instead of just below one
  double rho2 = rho.y - std::floor(rho.y);
  if (rho2 > 1.0 - 1e-6) rho2 -= 1.0;
  LiftMap f_hat = select_lift(lift, rho2, opts.rot_N, 1e-3);
  lam.rho2 = rho2;

  // deviation constant and boundedness gate
  BmmEstimate c_small = bmm_estimate(f_hat, {rho.x, lam.rho2}, PlaneVec{0, 1},
                                     std::max<long long>(opts.bmm_N / 100, 16),
                                     opts.bmm_samples, opts.seed + 1);
  BmmEstimate c_full = bmm_estimate(f_hat, {rho.x, lam.rho2}, PlaneVec{0, 1},
                                    opts.bmm_N, opts.bmm_samples,
                                    opts.seed + 1);
  if (c_full.c > 2.0 * c_small.c + 0.05) {
    std::ostringstream os;
    os << "build_lamination: vertical deviations keep growing (c("
       << std::max<long long>(opts.bmm_N / 100, 16) << ") = " << c_small.c
       << ", c(" << opts.bmm_N << ") = " << c_full.c
       << "); bounded mean motion hypothesis rejected";
    throw ConstructionError(os.str());
  }
  lam.c = c_full.c;
  lam.f_hat = f_hat;

  // if the deviation constant is too large for circloids to clear their own
  // deck translates, build on a vertical cover
  lam.cover_degree =
      (lam.c < 0.25) ? 1 : static_cast<int>(std::floor(2.0 * lam.c)) + 1;

  double band_c = lam.c + 1e-6;
  const int total = opts.level_count * lam.cover_degree;
  lam.levels.reserve(total);
  lam.circloids.reserve(total);
  for (int i = 0; i < total; ++i) {
    double r = static_cast<double>(i) / opts.level_count;
    RegionMask a_r =
        detail::build_level_mask(f_hat, r, lam.rho2, raster, opts, band_c);
    lam.levels.push_back(r);
    lam.circloids.push_back(build_C_r(a_r, opts.margin_frac));
  }

  if (!opts.verify) return lam;

  // order (and strict order below the pseudo-rotation gate) on all pairs
  for (int i = 0; i < total; ++i)
    for (int j = i + 1; j < total; ++j) {
      OrderRelation ord =
          region_order(lam.circloids[i].continuum, lam.circloids[j].continuum);
      if (!ord.below_eq || !ord.below_strict ||
          !mask_disjoint(lam.mask(i), lam.mask(j))) {
        std::ostringstream os;
        os << "build_lamination: order/disjointness fails for levels "
           << lam.levels[i] << " and " << lam.levels[j];
        throw ConstructionError(os.str());
      }
    }

  // which levels get the expensive rebuild checks
  std::vector<int> sel;
  if (opts.verify_levels < 0 || opts.verify_levels >= total) {
    for (int i = 0; i < total; ++i) sel.push_back(i);
  } else {
    for (int k = 0; k < opts.verify_levels; ++k)
      sel.push_back(k * total / opts.verify_levels);
  }

  for (int i : sel) {
    double r = lam.levels[i];
    // translate property: the circloid one unit up equals the row-shifted one
    if (r + 1.0 + band_c + 0.1 < raster.y_max) {
      RegionMask a_up = detail::build_level_mask(f_hat, r + 1.0, lam.rho2,
                                                 raster, opts, band_c);
      Circloid c_up = build_C_r(a_up, opts.margin_frac);
      if (raster.unit_aligned()) {
        RegionMask shifted = shift_rows(lam.mask(i), raster.rows_per_unit());
        if (!(c_up.mask() == shifted)) {
          std::ostringstream os;
          os << "build_lamination: translate property fails at level " << r;
          throw ConstructionError(os.str());
        }
      } else if (!hausdorff_leq(c_up.mask(),
                                shift_rows(lam.mask(i),
                                           static_cast<int>(std::round(
                                               1.0 / raster.cell_h()))),
                                opts.hausdorff_cells)) {
        throw ConstructionError(
            "build_lamination: translate property fails (unaligned raster)");
      }
    }
    // invariance: the image of C_r is the circloid at level r + rho2
    double s = r + lam.rho2;
    double k_shift = std::floor(s + 1e-6);
    double s_frac = s - k_shift;
    RegionMask a_s = detail::build_level_mask(f_hat, s_frac, lam.rho2, raster,
                                              opts, band_c);
    Circloid c_s = build_C_r(a_s, opts.margin_frac);
    RegionMask target = c_s.mask();
    if (k_shift != 0.0) {
      if (!raster.unit_aligned())
        throw ConstructionError(
            "build_lamination: invariance check needs a unit-aligned raster");
      target = shift_rows(target, static_cast<int>(k_shift) *
                                      raster.rows_per_unit());
    }
    RegionMask img = map_mask_through(f_hat, lam.mask(i),
                                      opts.invariance_subsamples);
    if (!hausdorff_leq(img, target, opts.hausdorff_cells)) {
      std::ostringstream os;
      os << "build_lamination: invariance fails at level " << r
         << " (Hausdorff > " << opts.hausdorff_cells << " cells)";
      throw ConstructionError(os.str());
    }
  }
  return lam;
}

// H2(z): the level function of the lamination. Returns the top of the last
// level interval whose circloid lies strictly below z; step resolution
// 1/level_count. Points below level 0 or above the last level are resolved
// through the unit-translate structure.
inline double H2_eval(const Lamination& lam, PlaneVec z) {
  if (lam.circloids.empty())
    throw ValidationError("H2_eval: empty lamination");
  const Raster& r = lam.raster;
  if (!r.unit_aligned())
    throw ValidationError("H2_eval: raster must be unit-aligned");
  const int rpu = r.rows_per_unit();
  int col = r.col_of(z.x);
  int row = r.row_of(wrap01(z.y));
  const int total = static_cast<int>(lam.circloids.size());

  auto above = [&](int level, int probe_row) {
    if (probe_row < 0 || probe_row >= r.ny) return probe_row >= r.ny;
    return static_cast<bool>(lam.circloids[level].continuum.upper.get(
        col, probe_row));
  };

  // shift by whole units until z sits above C_0 but not above C_0 + cover
  double shift = 0.0;
  int guard = 0;
  while (!above(0, row) && guard++ < 8) {
    row += rpu;
    shift -= 1.0;
  }
  while (above(total - 1, row) &&
         above(0, row - lam.cover_degree * rpu) && guard++ < 8) {
    row -= lam.cover_degree * rpu;
    shift += lam.cover_degree;
  }
  if (guard >= 8)
    throw ConstructionError("H2_eval: point cannot be shifted into the grid");

  // binary search for the last passing level
  int lo = 0, hi = total - 1, best = 0;
  while (lo <= hi) {
    int mid = (lo + hi) / 2;
    if (above(mid, row)) {
      best = mid;
      lo = mid + 1;
    } else {
      hi = mid - 1;
    }
  }
  return lam.levels[best] + 1.0 / lam.level_count + shift;
}

// ---------------------------------------------------------------------------
// Torus semi-conjugacy h = (h1, h2): h2 from the lamination of f, h1 from the
// lamination of the coordinate swap S o f o S.

struct SemiConjugacy2D {
  int grid_n = 0;
  std::vector<double> h1, h2;  // grid_n x grid_n, row-major, values in [0,1)
  double defect1 = 0.0, defect2 = 0.0;
  PlaneVec rho;
  int level_count = 0;
  std::uint64_t seed = 0;
};

struct TorusSemiConjOptions {
  LaminationOptions lam;
  int grid_n = 64;
  int defect_points = 1000;
  long long q_max = 50;
  double relation_tol = 1e-6;
  long long rho_refine_N = 1000000;
};

inline double circular_distance(double a) {
  double f = a - std::floor(a);
  return std::min(f, 1.0 - f);
}

inline SemiConjugacy2D build_torus_semiconjugacy(
    const MapDef& f, const Raster& raster, const TorusSemiConjOptions& opts) {
  LiftMap lift = to_lift(f);
  if (!lift.has_inverse())
    throw IterationError("build_torus_semiconjugacy: inverse required");

  // arithmetic gate on a long-orbit refinement of the rotation vector
  PlaneVec rho_ref =
      rotation_vector_estimate(lift, {0.13, 0.37}, opts.rho_refine_N).rho;
  VectorClass vc =
      classify_rotation_vector(rho_ref, opts.q_max, opts.relation_tol);
  if (vc.tag != VectorClassTag::kTotallyIrrational) {
    std::ostringstream os;
    os << "build_torus_semiconjugacy: rotation vector (" << rho_ref.x << ", "
       << rho_ref.y << ") classifies as " << to_string(vc.tag)
       << "; need TotallyIrrational";
    throw ConstructionError(os.str());
  }

  SemiConjugacy2D out;
  out.rho = rho_ref;
  out.level_count = opts.lam.level_count;
  out.seed = opts.lam.seed;

  Lamination lam2 = build_lamination(f, raster, opts.lam);
  MapDef swapped = swap_conjugate(f);
  Lamination lam1 = build_lamination(swapped, raster, opts.lam);

  LiftMap fl = to_lift(f);
  auto h2 = [&](PlaneVec z) { return wrap01(H2_eval(lam2, z)); };
  auto h1 = [&](PlaneVec z) {
    return wrap01(H2_eval(lam1, {z.y, z.x}));
  };

  out.grid_n = opts.grid_n;
  out.h1.resize(static_cast<std::size_t>(opts.grid_n) * opts.grid_n);
  out.h2.resize(out.h1.size());
  for (int gy = 0; gy < opts.grid_n; ++gy)
    for (int gx = 0; gx < opts.grid_n; ++gx) {
      PlaneVec z{(gx + 0.5) / opts.grid_n, (gy + 0.5) / opts.grid_n};
      out.h1[static_cast<std::size_t>(gy) * opts.grid_n + gx] = h1(z);
      out.h2[static_cast<std::size_t>(gy) * opts.grid_n + gx] = h2(z);
    }

  Rng rng(opts.lam.seed + 17);
  for (int i = 0; i < opts.defect_points; ++i) {
    PlaneVec z = rng.torus_point();
    PlaneVec fz = wrap_torus(fl(z));
    out.defect1 = std::max(
        out.defect1, circular_distance(h1(fz) - h1(z) - rho_ref.x));
    out.defect2 = std::max(
        out.defect2, circular_distance(h2(fz) - h2(z) - rho_ref.y));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Rendering.

inline std::vector<std::vector<Rgb>> render_lamination(const Lamination& lam) {
  const Raster& r = lam.raster;
  std::vector<std::vector<Rgb>> px(
      r.ny, std::vector<Rgb>(r.nx, Rgb{255, 255, 255}));
  for (std::size_t i = 0; i < lam.circloids.size(); ++i) {
    Rgb color = hue_ramp(lam.levels[i] / lam.cover_degree);
    const RegionMask& m = lam.mask(static_cast<int>(i));
    for (int y = 0; y < r.ny; ++y)
      for (int x = 0; x < r.nx; ++x)
        if (m.get(x, y)) px[y][x] = color;
  }
  return px;
}

inline std::vector<std::vector<Rgb>> render_heat(const std::vector<double>& v,
                                                 int grid_n) {
  std::vector<std::vector<Rgb>> px(grid_n, std::vector<Rgb>(grid_n));
  for (int y = 0; y < grid_n; ++y)
    for (int x = 0; x < grid_n; ++x)
      px[y][x] = hue_ramp(v[static_cast<std::size_t>(y) * grid_n + x]);
  return px;
}

// Circloid render with hemispheres color-coded (mask black, upper hemisphere
// warm, lower hemisphere cool).
inline std::vector<std::vector<Rgb>> render_circloid(const Circloid& c) {
  const Raster& r = c.mask().raster;
  std::vector<std::vector<Rgb>> px(
      r.ny, std::vector<Rgb>(r.nx, Rgb{255, 255, 255}));
  for (int y = 0; y < r.ny; ++y)
    for (int x = 0; x < r.nx; ++x) {
      if (c.mask().get(x, y))
        px[y][x] = Rgb{0, 0, 0};
      else if (c.continuum.upper.get(x, y))
        px[y][x] = Rgb{255, 180, 120};
      else if (c.continuum.lower.get(x, y))
        px[y][x] = Rgb{120, 180, 255};
    }
  return px;
}

}  // namespace torodyn

#endif  // TORODYN_LAMINATION_HPP
