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
// Command-line surface: map ingestion, analysis commands, report and plot
// emission. Exit codes: 0 ok (classification may still be inconclusive,
// noted in the report), 2 parse error, 3 validation error, 4 semi-conjugacy
// defect or hypothesis failure, 5 construction failure.

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <string>

#include "torodyn/classify.hpp"
#include "torodyn/lamination.hpp"
#include "torodyn/reports_json.hpp"

namespace {

using namespace torodyn;

struct RunConfig {
  std::vector<double> raster_spec;  // NX NY YMIN YMAX
  long long iters = 100000;
  int levels = 64;
  int samples = 32;
  std::uint64_t seed = 12345;
  std::string out_dir = ".";
  bool resolution_check = false;
};

void add_common(CLI::App* cmd, RunConfig& g, std::string& map_path) {
  cmd->add_option("map", map_path, "map definition file")->required();
  cmd->add_option("--raster", g.raster_spec, "raster as NX NY YMIN YMAX")
      ->expected(4);
  cmd->add_option("--iters", g.iters, "orbit iteration budget");
  cmd->add_option("--levels", g.levels, "lamination level count");
  cmd->add_option("--samples", g.samples, "random sample count");
  cmd->add_option("--seed", g.seed, "random seed (fixes all outputs)");
  cmd->add_option("--out", g.out_dir, "output directory");
  cmd->add_flag("--resolution-check", g.resolution_check,
                "re-run constructions at doubled resolution");
}

Raster pick_raster(const RunConfig& g) {
  if (g.raster_spec.size() == 4)
    return Raster(static_cast<int>(g.raster_spec[0]),
                  static_cast<int>(g.raster_spec[1]), g.raster_spec[2],
                  g.raster_spec[3]);
  return Raster::lamination_grid(512, 128, 1, 3);
}

MapDef load_validated(const std::string& path) {
  MapDef m = load_map_file(path);
  LiftValidation v = validate_lift(m, 64);
  if (!v.ok) throw ValidationError("map validation failed: " + v.message);
  return m;
}

std::string out_path(const RunConfig& g, const std::string& name) {
  std::filesystem::create_directories(g.out_dir);
  return (std::filesystem::path(g.out_dir) / name).string();
}

void write_json(const RunConfig& g, const std::string& name, const Json& j) {
  atomic_write_file(out_path(g, name), j.dump(2) + "\n");
}

LaminationOptions lam_options(const RunConfig& g) {
  LaminationOptions opts;
  opts.level_count = g.levels;
  opts.seed = g.seed;
  opts.rot_N = g.iters;
  opts.rot_samples = g.samples;
  opts.bmm_N = std::max<long long>(g.iters / 10, 1024);
  opts.bmm_samples = std::max(4, g.samples / 2);
  return opts;
}

int cmd_rotset(const RunConfig& g, const std::string& map_path,
               const std::vector<double>& v_flag) {
  MapDef m = load_validated(map_path);
  LiftMap f = to_lift(m);
  RotationReport rep = rotation_set_estimate(
      f, g.samples, g.iters, g.seed, 1e-2,
      f.has_inverse() ? std::max<long long>(g.iters / 10, 1024) : 0,
      f.has_inverse() ? std::max(4, g.samples / 2) : 0);
  Json j;
  j["map"] = m.name;
  j["report"] = to_json(rep);
  write_json(g, "report.json", j);

  long long n_max = std::min<long long>(g.iters, 2000);
  long long n_min = f.has_inverse() ? -n_max : 0;
  DeviationSeries dev;
  if (v_flag.size() == 2) {
    dev = directional_deviation(f, rep.mean, {v_flag[0], v_flag[1]}, n_min,
                                n_max, {0.13, 0.37});
  } else {
    dev = deviation(f, rep.mean, n_min, n_max, {0.13, 0.37});
  }
  atomic_write_file(out_path(g, "deviations.csv"), deviation_csv(dev));
  std::printf("rotset: spread %.3g, pseudo-rotation: %s\n", rep.spread,
              rep.is_pseudo_rotation ? "yes" : "no");
  return 0;
}

int cmd_bmm(const RunConfig& g, const std::string& map_path,
            const std::vector<double>& v_flag) {
  MapDef m = load_validated(map_path);
  LiftMap f = to_lift(m);
  PlaneVec rho = rotation_vector_estimate(f, {0.13, 0.37}, g.iters).rho;
  std::optional<PlaneVec> v;
  if (v_flag.size() == 2) v = PlaneVec{v_flag[0], v_flag[1]};
  BmmEstimate b = bmm_estimate(
      f, rho, v, std::max<long long>(g.iters / 10, 1024), g.samples, g.seed);
  Json j;
  j["map"] = m.name;
  j["rho"] = to_json(rho);
  if (v) j["v"] = to_json(*v);
  j["bmm"] = to_json(b);
  write_json(g, "bmm.json", j);
  std::printf("bmm: c = %.9g (witness n = %lld)%s\n", b.c, b.witness_n,
              b.at_boundary ? " [attained at the truncation: extend N]" : "");
  return 0;
}

int cmd_semiconj(const RunConfig& g, const std::string& map_path,
                 const std::vector<long long>& v_flag, double rho0,
                 long long trunc, double defect_threshold) {
  MapDef m = load_validated(map_path);
  LiftMap f = to_lift(m);
  if (v_flag.size() != 2)
    throw ValidationError("semiconj: --v P Q (integer direction) required");
  LatticeVec v{v_flag[0], v_flag[1]};
  std::vector<PlaneVec> ks =
      make_k_sample(f, static_cast<int>(std::min<long long>(g.iters, 10000)),
                    1000, g.seed);
  GhOptions opts;
  opts.N = trunc;
  opts.defect_threshold = defect_threshold;
  SemiConjugacy1D sc = gh_semiconjugacy(f, v, rho0, ks, opts);
  Json j;
  j["map"] = m.name;
  j["semiconjugacy"] = to_json(sc);
  write_json(g, "semiconj.json", j);
  atomic_write_file(out_path(g, "semiconj.csv"), semiconj_csv(sc));
  std::printf("semiconj: defect %.3g, displacement bound %.3g\n", sc.defect,
              sc.displacement_bound);
  return 0;
}

int cmd_lamination(const RunConfig& g, const std::string& map_path) {
  MapDef m = load_validated(map_path);
  Raster raster = pick_raster(g);
  LaminationOptions opts = lam_options(g);
  Lamination lam = build_lamination(m, raster, opts);
  write_ppm(render_lamination(lam), out_path(g, "lamination.ppm"));
  write_pbm(lam.mask(0), out_path(g, "circloid0.pbm"));
  Json j;
  j["map"] = m.name;
  j["lamination"] = to_json(lam);
  if (g.resolution_check) {
    Raster fine(raster.nx * 2, raster.ny * 2, raster.y_min, raster.y_max);
    LaminationOptions fopts = opts;
    fopts.verify_levels = 4;
    Lamination lam_fine = build_lamination(m, fine, fopts);
    int worst = 0;
    for (std::size_t i = 0; i < lam.circloids.size(); ++i) {
      RegionMask up = upsample2x(lam.mask(static_cast<int>(i)), fine);
      worst = std::max(
          worst,
          hausdorff_cells(up, lam_fine.mask(static_cast<int>(i)), 8));
    }
    Json rc;
    rc["fine_raster"] = Json::array({fine.nx, fine.ny});
    rc["hausdorff_max_fine_cells"] = worst;
    rc["pass"] = worst <= 3;
    j["resolution_check"] = rc;
    std::printf("resolution check: max Hausdorff %d fine cells\n", worst);
  }
  write_json(g, "lamination.json", j);
  std::printf("lamination: %zu circloids, c = %.6g, cover degree %d\n",
              lam.circloids.size(), lam.c, lam.cover_degree);
  return 0;
}

int cmd_classify(const RunConfig& g, const std::string& map_path) {
  MapDef m = load_validated(map_path);
  Raster raster = pick_raster(g);
  ClassifyConfig cfg;
  cfg.seed = g.seed;
  cfg.rot_N = g.iters;
  cfg.rot_samples = g.samples;
  cfg.refine_N = std::min<long long>(
      std::max<long long>(10 * g.iters, 1000000), 4000000);
  cfg.detect.refine_N = cfg.refine_N;
  cfg.lam = lam_options(g);
  cfg.trans_N = g.iters;
  ClassificationReport rep = classify(m, raster, cfg);
  write_json(g, "classification.json", to_json(rep));
  if (rep.circloid.found)
    write_pbm(rep.circloid.circloid, out_path(g, "circloid.pbm"));
  std::printf("classify: linearization %s, recurrence %s\n",
              to_string(rep.linearization), to_string(rep.recurrence));
  if (rep.linearization == LinearizationBranch::kInconclusive ||
      rep.recurrence == RecurrenceBranch::kInconclusive)
    std::printf("note: inconclusive verdicts are reported, not errors\n");
  return 0;
}

int cmd_render(const RunConfig& g, const std::string& map_path) {
  MapDef m = load_validated(map_path);
  Raster raster = pick_raster(g);
  LaminationOptions opts = lam_options(g);
  opts.verify_levels = 4;
  Lamination lam2 = build_lamination(m, raster, opts);
  write_ppm(render_lamination(lam2), out_path(g, "lamination.ppm"));
  write_ppm(render_circloid(lam2.circloids[0]), out_path(g, "circloid0.ppm"));
  Lamination lam1 = build_lamination(swap_conjugate(m), raster, opts);

  const int grid_n = 256;
  std::vector<double> h1(static_cast<std::size_t>(grid_n) * grid_n);
  std::vector<double> h2(h1.size());
  for (int gy = 0; gy < grid_n; ++gy)
    for (int gx = 0; gx < grid_n; ++gx) {
      PlaneVec z{(gx + 0.5) / grid_n, (gy + 0.5) / grid_n};
      h2[static_cast<std::size_t>(gy) * grid_n + gx] =
          wrap01(H2_eval(lam2, z));
      h1[static_cast<std::size_t>(gy) * grid_n + gx] =
          wrap01(H2_eval(lam1, {z.y, z.x}));
    }
  write_ppm(render_heat(h1, grid_n), out_path(g, "h1.ppm"));
  write_ppm(render_heat(h2, grid_n), out_path(g, "h2.ppm"));
  std::printf("render: lamination.ppm, circloid0.ppm, h1.ppm, h2.ppm\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"torus map rotation sets, circloids, and semi-conjugacies"};
  app.require_subcommand(1);

  RunConfig g;
  std::string map_path;
  std::vector<double> v_double;
  std::vector<long long> v_int;
  double rho0 = 0.0;
  long long trunc = 1000;
  double defect_threshold = 1e-6;

  CLI::App* rotset = app.add_subcommand("rotset", "rotation set estimate");
  add_common(rotset, g, map_path);
  rotset->add_option("--v", v_double, "direction for the deviation CSV")
      ->expected(2);

  CLI::App* bmm = app.add_subcommand("bmm", "bounded mean motion constant");
  add_common(bmm, g, map_path);
  bmm->add_option("--v", v_double, "direction to project on")->expected(2);

  CLI::App* semiconj =
      app.add_subcommand("semiconj", "one-dimensional semi-conjugacy");
  add_common(semiconj, g, map_path);
  semiconj->add_option("--v", v_int, "integer direction P Q")->expected(2);
  semiconj->add_option("--rho0", rho0, "target rotation number")->required();
  semiconj->add_option("--trunc", trunc, "sup truncation N");
  semiconj->add_option("--defect-threshold", defect_threshold,
                       "acceptable defect");

  CLI::App* lamination = app.add_subcommand("lamination", "circloid lamination");
  add_common(lamination, g, map_path);

  CLI::App* classify_cmd =
      app.add_subcommand("classify", "trichotomy classification");
  add_common(classify_cmd, g, map_path);

  CLI::App* render = app.add_subcommand("render", "lamination and level art");
  add_common(render, g, map_path);

  CLI11_PARSE(app, argc, argv);

  bool in_semiconj = semiconj->parsed();
  try {
    if (rotset->parsed()) return cmd_rotset(g, map_path, v_double);
    if (bmm->parsed()) return cmd_bmm(g, map_path, v_double);
    if (in_semiconj)
      return cmd_semiconj(g, map_path, v_int, rho0, trunc, defect_threshold);
    if (lamination->parsed()) return cmd_lamination(g, map_path);
    if (classify_cmd->parsed()) return cmd_classify(g, map_path);
    if (render->parsed()) return cmd_render(g, map_path);
  } catch (const torodyn::ParseError& e) {
    std::fprintf(stderr, "parse error: %s\n", e.what());
    return 2;
  } catch (const torodyn::ValidationError& e) {
    std::fprintf(stderr, "validation error: %s\n", e.what());
    return 3;
  } catch (const torodyn::IterationError& e) {
    std::fprintf(stderr, "iteration error: %s\n", e.what());
    return 3;
  } catch (const torodyn::ConstructionError& e) {
    std::fprintf(stderr, "construction error: %s\n", e.what());
    return in_semiconj ? 4 : 5;
  } catch (const torodyn::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
