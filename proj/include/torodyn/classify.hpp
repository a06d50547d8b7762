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

#ifndef TORODYN_CLASSIFY_HPP
#define TORODYN_CLASSIFY_HPP

#include <algorithm>
#include <optional>
#include <sstream>
#include <vector>

#include "torodyn/lamination.hpp"
#include "torodyn/rational.hpp"

namespace torodyn {

// ---------------------------------------------------------------------------
// Periodic point search.

struct PeriodicPointCandidate {
  PlaneVec z;
  long long q = 1;
  LatticeVec p;
  double residual = 0.0;
};

namespace detail {

inline double pp_residual(const LiftMap& f, PlaneVec z, long long q,
                          LatticeVec p) {
  PlaneVec w = iterate_lift(f, q, z);
  return norm({w.x - z.x - static_cast<double>(p.p),
               w.y - z.y - static_cast<double>(p.q)});
}

// Recursive grid refinement around a seed: 5x5 probe, shrink by 4.
inline PeriodicPointCandidate refine_candidate(const LiftMap& f, PlaneVec z0,
                                               long long q, LatticeVec p,
                                               double half_width, int depth) {
  PlaneVec best_z = z0;
  double best = pp_residual(f, z0, q, p);
  for (int d = 0; d < depth; ++d) {
    PlaneVec center = best_z;
    for (int iy = -2; iy <= 2; ++iy)
      for (int ix = -2; ix <= 2; ++ix) {
        if (ix == 0 && iy == 0) continue;
        PlaneVec probe{center.x + ix * half_width / 2,
                       center.y + iy * half_width / 2};
        double r = pp_residual(f, probe, q, p);
        if (r < best) {
          best = r;
          best_z = probe;
        }
      }
    half_width /= 4;
  }
  return {best_z, q, p, best};
}

}  // namespace detail

// Scans a grid for near-solutions of F^q(z) = z + p over q <= q_max and
// |p_i| <= p_max, refines the grid minima, and keeps candidates below tol.
// An empty result is a valid outcome (the search is bounded, not complete).
inline std::vector<PeriodicPointCandidate> find_periodic_points(
    const LiftMap& f, long long q_max, long long p_max, int grid_n, double tol,
    int max_candidates = 4096) {
  if (q_max < 1) throw ValidationError("find_periodic_points: q_max >= 1");
  std::vector<PeriodicPointCandidate> out;
  std::vector<PlaneVec> base, cur;
  base.reserve(static_cast<std::size_t>(grid_n) * grid_n);
  for (int gy = 0; gy < grid_n; ++gy)
    for (int gx = 0; gx < grid_n; ++gx)
      base.push_back({(gx + 0.5) / grid_n, (gy + 0.5) / grid_n});
  cur = base;
  const double cell = 1.0 / grid_n;
  for (long long q = 1; q <= q_max; ++q) {
    for (PlaneVec& z : cur) z = f.fwd(z);
    std::vector<double> res(base.size());
    for (std::size_t i = 0; i < base.size(); ++i) {
      PlaneVec disp = cur[i] - base[i];
      LatticeVec p{static_cast<long long>(std::llround(disp.x)),
                   static_cast<long long>(std::llround(disp.y))};
      if (std::abs(p.p) > p_max || std::abs(p.q) > p_max) {
        res[i] = 1e9;
        continue;
      }
      res[i] = norm({disp.x - static_cast<double>(p.p),
                     disp.y - static_cast<double>(p.q)});
    }
    // refine grid-local minima with a plausible basin
    for (int gy = 0; gy < grid_n; ++gy)
      for (int gx = 0; gx < grid_n; ++gx) {
        std::size_t i = static_cast<std::size_t>(gy) * grid_n + gx;
        if (res[i] > 0.45) continue;
        bool local_min = true;
        for (int dy = -1; dy <= 1 && local_min; ++dy)
          for (int dx = -1; dx <= 1; ++dx) {
            int nx2 = (gx + dx + grid_n) % grid_n;
            int ny2 = gy + dy;
            if (ny2 < 0 || ny2 >= grid_n) continue;
            if (res[static_cast<std::size_t>(ny2) * grid_n + nx2] < res[i]) {
              local_min = false;
              break;
            }
          }
        if (!local_min) continue;
        PlaneVec disp = cur[i] - base[i];
        LatticeVec p{static_cast<long long>(std::llround(disp.x)),
                     static_cast<long long>(std::llround(disp.y))};
        PeriodicPointCandidate cand =
            detail::refine_candidate(f, base[i], q, p, cell, 8);
        if (cand.residual < tol &&
            static_cast<int>(out.size()) < max_candidates)
          out.push_back(cand);
      }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Transitivity heuristic.

struct TransitivityResult {
  bool plausibly_transitive = false;  // never a proof
  double best_coverage = 0.0;
  int boxes_per_side = 0;
  long long N = 0;
  int trials = 0;
};

inline TransitivityResult transitivity_heuristic(const LiftMap& f, double eps,
                                                 long long N, int trials,
                                                 std::uint64_t seed) {
  TransitivityResult out;
  out.boxes_per_side = std::max(2, static_cast<int>(std::round(1.0 / eps)));
  out.N = N;
  out.trials = trials;
  const int B = out.boxes_per_side;
  Rng rng(seed);
  for (int t = 0; t < trials; ++t) {
    std::vector<char> seen(static_cast<std::size_t>(B) * B, 0);
    long long count = 0;
    PlaneVec w = rng.torus_point();
    for (long long n = 0; n < N; ++n) {
      int bx = std::min(B - 1, static_cast<int>(w.x * B));
      int by = std::min(B - 1, static_cast<int>(w.y * B));
      char& c = seen[static_cast<std::size_t>(by) * B + bx];
      if (!c) {
        c = 1;
        ++count;
      }
      w = wrap_torus(f.fwd(w));
    }
    double coverage =
        static_cast<double>(count) / (static_cast<double>(B) * B);
    out.best_coverage = std::max(out.best_coverage, coverage);
  }
  out.plausibly_transitive = out.best_coverage >= 0.99;
  return out;
}

// ---------------------------------------------------------------------------
// Periodic circloid detection.

struct PeriodicCircloidEvidence {
  bool found = false;
  LatticeVec v;
  Rational lambda{0, 1};
  Mat2i frame;            // vertical frame: v-component becomes the y axis
  long long q = 1;        // the circloid is invariant under f^q (conjugated)
  double line_residual = 0.0;
  double c = 0.0;         // deviation constant parallel to v (normalized)
  RegionMask circloid;    // in conjugated coordinates
  RegionMask second_circloid;  // a second, disjoint invariant circloid
  bool second_found = false;
  int hausdorff = 0;
  std::string note;
};

struct DetectOptions {
  long long v_max = 5;
  long long q_max = 8;
  double line_tol = 1e-7;  // keep strictly below relation_tol / q_max
  long long refine_N = 2000000;
  long long bmm_N = 10000;
  long long bmm_small_N = 100;
  int bmm_samples = 16;
  long long ar_N = 200;
  int ar_stall = 48;
  int hausdorff_cells = 2;
  double margin_frac = 0.1;
  std::uint64_t seed = 12345;
  bool build_second = true;
};

namespace detail {

inline std::vector<LatticeVec> primitive_directions(long long v_max) {
  std::vector<LatticeVec> dirs;
  for (long long a = -v_max; a <= v_max; ++a)
    for (long long b = -v_max; b <= v_max; ++b) {
      LatticeVec v{a, b};
      if (!is_primitive(v)) continue;
      if (norm_sq(v) > v_max * v_max) continue;
      // canonical sign: first nonzero component positive
      if (a < 0 || (a == 0 && b < 0)) continue;
      dirs.push_back(v);
    }
  std::sort(dirs.begin(), dirs.end(), [](LatticeVec u, LatticeVec w) {
    if (norm_sq(u) != norm_sq(w)) return norm_sq(u) < norm_sq(w);
    if (u.p != w.p) return u.p < w.p;
    return u.q < w.q;
  });
  return dirs;
}

}  // namespace detail

// Searches primitive directions v and rationals lambda = p/q for a line
// lambda v + v-perp carrying the whole rotation set, with flat deviation
// growth parallel to v. On success builds the invariant circloid of the
// v-adapted conjugate of f^q and verifies its invariance on the raster.
inline PeriodicCircloidEvidence detect_periodic_circloid(
    const MapDef& f, const Raster& raster, const DetectOptions& opts = {}) {
  LiftMap lift = to_lift(f);
  if (!lift.has_inverse())
    throw IterationError("detect_periodic_circloid: inverse required");
  PeriodicCircloidEvidence ev;
  PlaneVec rho =
      rotation_vector_estimate(lift, {0.13, 0.37}, opts.refine_N).rho;

  for (LatticeVec v : detail::primitive_directions(opts.v_max)) {
    double s = dot(rho, to_plane(v));
    double n2 = static_cast<double>(norm_sq(v));
    Rational lam = best_rational(s / n2, opts.q_max);
    double resid = std::abs(s - lam.value() * n2);
    if (resid > opts.line_tol * std::max(1.0, n2)) continue;

    // flat growth of deviations parallel to v
    BmmEstimate small = bmm_estimate(lift, rho, to_plane(v), opts.bmm_small_N,
                                     opts.bmm_samples, opts.seed + 2);
    BmmEstimate full = bmm_estimate(lift, rho, to_plane(v), opts.bmm_N,
                                    opts.bmm_samples, opts.seed + 2);
    if (full.c > 2.0 * small.c + 0.05) continue;

    // construct: conjugate so v becomes vertical, take the q-th power, and
    // cancel the integer vertical translation
    UnimodularFrame frame = vertical_frame(v);
    LiftMap conj = conjugate_lift(lift, frame);
    LiftMap g = power_lift(conj, lam.q);
    LiftMap g0;
    try {
      g0 = select_lift(g, 0.0, opts.refine_N / 10, 1e-3);
    } catch (const ValidationError&) {
      continue;  // vertical rotation of the power is not an integer: no fit
    }
    PlaneVec g_rho =
        rotation_vector_estimate(g0, {0.17, 0.29}, opts.refine_N / 10).rho;
    BmmEstimate vc = bmm_estimate(g0, {g_rho.x, 0.0}, PlaneVec{0, 1},
                                  opts.bmm_N, opts.bmm_samples, opts.seed + 3);
    ArOptions ao;
    ao.N = opts.ar_N;
    ao.c = vc.c + 1e-6;
    ao.stall = opts.ar_stall;
    try {
      RegionMask a0 = build_A_r(g0, 0.0, 0.0, raster, ao);
      Circloid c0 = build_C_r(a0, opts.margin_frac);
      RegionMask img = map_mask_through(g0, c0.mask());
      if (!hausdorff_leq(img, c0.mask(), opts.hausdorff_cells)) {
        ev.note = "rationally bounded direction found but the constructed "
                  "set failed the invariance tolerance";
        continue;
      }
      // torus projection sanity: the circloid clears its own deck translate
      if (raster.unit_aligned()) {
        RegionMask up = shift_rows(c0.mask(), raster.rows_per_unit());
        if (!mask_disjoint(c0.mask(), up)) {
          ev.note = "circloid intersects its deck translate (deviation "
                    "constant too large for this cover)";
          continue;
        }
      }
      ev.found = true;
      ev.v = v;
      ev.lambda = lam;
      ev.frame = frame.A;
      ev.q = lam.q;
      ev.line_residual = resid;
      ev.c = vc.c;
      ev.circloid = c0.mask();
      ev.hausdorff = hausdorff_cells(img, c0.mask(), opts.hausdorff_cells);
      if (opts.build_second) {
        RegionMask a_half = build_A_r(g0, 0.5, 0.0, raster, ao);
        Circloid c_half = build_C_r(a_half, opts.margin_frac);
        RegionMask img_half = map_mask_through(g0, c_half.mask());
        if (hausdorff_leq(img_half, c_half.mask(), opts.hausdorff_cells) &&
            mask_disjoint(c0.mask(), c_half.mask())) {
          ev.second_found = true;
          ev.second_circloid = c_half.mask();
        }
      }
      return ev;
    } catch (const Error& e) {
      ev.note = std::string("construction failed: ") + e.what();
      continue;
    }
  }
  return ev;
}

// ---------------------------------------------------------------------------
// The full decision pipeline.

// How the map relates to a rotation: semi-conjugate to a totally irrational
// one, carrying a periodic circloid, carrying a periodic point, or none
// verified.
enum class LinearizationBranch {
  kSemiConjugate,
  kPeriodicCircloid,
  kPeriodicPoint,
  kInconclusive,
};
// Recurrence alternative for non-wandering maps.
enum class RecurrenceBranch {
  kTransitive,
  kTwoCircloids,
  kPeriodicPoint,
  kInconclusive,
};

inline const char* to_string(LinearizationBranch b) {
  switch (b) {
    case LinearizationBranch::kSemiConjugate:    return "semi-conjugacy";
    case LinearizationBranch::kPeriodicCircloid: return "periodic-circloid";
    case LinearizationBranch::kPeriodicPoint:    return "periodic-point";
    default:                                     return "inconclusive";
  }
}
inline const char* to_string(RecurrenceBranch b) {
  switch (b) {
    case RecurrenceBranch::kTransitive:    return "transitive";
    case RecurrenceBranch::kTwoCircloids:  return "two-circloids";
    case RecurrenceBranch::kPeriodicPoint: return "periodic-point";
    default:                               return "inconclusive";
  }
}

struct ClassifyConfig {
  long long rot_N = 100000;
  int rot_samples = 16;
  long long refine_N = 2000000;
  double tol_pr = 1e-2;
  long long q_max = 50;
  double relation_tol = 1e-6;
  // periodic points
  long long pp_q_max = 20;
  long long pp_p_max = 25;
  int pp_grid = 32;
  double pp_tol = 1e-8;
  // circloid detection / lamination
  DetectOptions detect;
  LaminationOptions lam;
  int semiconj_grid = 32;
  int semiconj_defect_points = 1000;
  // transitivity
  double box_eps = 1.0 / 32;
  long long trans_N = 100000;
  int trans_trials = 4;
  std::uint64_t seed = 12345;
};

struct ClassificationReport {
  int schema = 1;
  std::string map_name;
  RotationReport rotation;
  PlaneVec rho_refined;
  VectorClass vclass;
  std::vector<PeriodicPointCandidate> periodic_points;
  PeriodicCircloidEvidence circloid;
  bool circloid_searched = false;
  TransitivityResult transitivity;
  LinearizationBranch linearization = LinearizationBranch::kInconclusive;
  RecurrenceBranch recurrence = RecurrenceBranch::kInconclusive;
  double semiconj_defect1 = -1.0;
  double semiconj_defect2 = -1.0;
  std::vector<std::string> notes;
  std::uint64_t seed = 0;
};

// Decision pipeline for the two trichotomies. Every branch downgrades to
// "inconclusive" rather than guessing; the verdicts carry their evidence and
// the report records the non-verifiable hypotheses as assumptions.
inline ClassificationReport classify(const MapDef& f, const Raster& raster,
                                     const ClassifyConfig& cfg = {}) {
  LiftMap lift = to_lift(f);
  ClassificationReport rep;
  rep.map_name = f.name;
  rep.seed = cfg.seed;
  rep.notes.push_back(
      "conservativity / non-wandering hypotheses are assumed, not verified");
  rep.notes.push_back("periodic-point search bounded by q <= " +
                      std::to_string(cfg.pp_q_max));

  rep.rotation = rotation_set_estimate(lift, cfg.rot_samples, cfg.rot_N,
                                       cfg.seed, cfg.tol_pr, 0, 0);
  rep.rho_refined =
      rotation_vector_estimate(lift, {0.13, 0.37}, cfg.refine_N).rho;

  if (!rep.rotation.is_pseudo_rotation) {
    rep.notes.push_back(
        "rotation estimates spread beyond tol_pr: not treated as a "
        "pseudo-rotation");
    rep.linearization = LinearizationBranch::kInconclusive;
  } else {
    rep.vclass = classify_rotation_vector(rep.rho_refined, cfg.q_max,
                                          cfg.relation_tol);
    switch (rep.vclass.tag) {
      case VectorClassTag::kRational: {
        rep.periodic_points =
            find_periodic_points(lift, cfg.pp_q_max, cfg.pp_p_max,
                                 cfg.pp_grid, cfg.pp_tol);
        if (!rep.periodic_points.empty()) {
          rep.linearization = LinearizationBranch::kPeriodicPoint;
        } else {
          rep.linearization = LinearizationBranch::kInconclusive;
          rep.notes.push_back(
              "rational rotation vector but no periodic point found within "
              "the search bounds");
        }
        break;
      }
      case VectorClassTag::kMixed: {
        DetectOptions d = cfg.detect;
        d.seed = cfg.seed;
        rep.circloid = detect_periodic_circloid(f, raster, d);
        rep.circloid_searched = true;
        if (rep.circloid.found) {
          rep.linearization = LinearizationBranch::kPeriodicCircloid;
        } else {
          rep.linearization = LinearizationBranch::kInconclusive;
          rep.notes.push_back("mixed rotation vector but no verified "
                              "periodic circloid: " + rep.circloid.note);
        }
        break;
      }
      case VectorClassTag::kTotallyIrrational: {
        try {
          TorusSemiConjOptions topts;
          topts.lam = cfg.lam;
          topts.lam.seed = cfg.seed;
          topts.grid_n = cfg.semiconj_grid;
          topts.defect_points = cfg.semiconj_defect_points;
          topts.q_max = cfg.q_max;
          topts.relation_tol = cfg.relation_tol;
          topts.rho_refine_N = cfg.refine_N;
          SemiConjugacy2D sc = build_torus_semiconjugacy(f, raster, topts);
          rep.semiconj_defect1 = sc.defect1;
          rep.semiconj_defect2 = sc.defect2;
          double bound = 2.0 / cfg.lam.level_count;
          if (sc.defect1 <= bound && sc.defect2 <= bound) {
            rep.linearization = LinearizationBranch::kSemiConjugate;
          } else {
            rep.linearization = LinearizationBranch::kInconclusive;
            rep.notes.push_back("semi-conjugacy defect above 2/level_count");
          }
        } catch (const Error& e) {
          rep.linearization = LinearizationBranch::kInconclusive;
          rep.notes.push_back(std::string("semi-conjugacy construction "
                                          "failed: ") + e.what());
        }
        break;
      }
    }
  }

  // Recurrence line: transitivity heuristic plus the two-circloid search.
  rep.transitivity = transitivity_heuristic(lift, cfg.box_eps, cfg.trans_N,
                                            cfg.trans_trials, cfg.seed + 5);
  if (!rep.circloid_searched) {
    DetectOptions d = cfg.detect;
    d.seed = cfg.seed;
    rep.circloid = detect_periodic_circloid(f, raster, d);
    rep.circloid_searched = true;
  }
  bool two_circloids = rep.circloid.found && rep.circloid.second_found;
  if (two_circloids && rep.transitivity.plausibly_transitive) {
    rep.recurrence = RecurrenceBranch::kInconclusive;
    rep.notes.push_back(
        "contradictory evidence: high box coverage and two disjoint "
        "invariant circloids; reporting neither");
  } else if (two_circloids) {
    rep.recurrence = RecurrenceBranch::kTwoCircloids;
  } else if (rep.transitivity.plausibly_transitive) {
    rep.recurrence = RecurrenceBranch::kTransitive;
  } else {
    if (rep.periodic_points.empty() &&
        rep.linearization != LinearizationBranch::kPeriodicCircloid) {
      // one more chance for the periodic-point alternative
      rep.periodic_points = find_periodic_points(
          lift, cfg.pp_q_max, cfg.pp_p_max, cfg.pp_grid, cfg.pp_tol);
    }
    rep.recurrence = rep.periodic_points.empty()
                         ? RecurrenceBranch::kInconclusive
                         : RecurrenceBranch::kPeriodicPoint;
  }
  return rep;
}

}  // namespace torodyn

#endif  // TORODYN_CLASSIFY_HPP
