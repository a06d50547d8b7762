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

#ifndef TORODYN_REPORTS_JSON_HPP
#define TORODYN_REPORTS_JSON_HPP

#include <json.hpp>
#include <string>

#include "torodyn/classify.hpp"
#include "torodyn/lamination.hpp"
#include "torodyn/rotation.hpp"
#include "torodyn/semiconj1d.hpp"

namespace torodyn {

// All exports use ordered JSON: fixed key order plus the seeded inputs make
// outputs byte-identical across runs.
using Json = nlohmann::ordered_json;

inline Json to_json(PlaneVec v) { return Json::array({v.x, v.y}); }
inline Json to_json(LatticeVec v) { return Json::array({v.p, v.q}); }

inline Json to_json(const BmmEstimate& b) {
  Json j;
  j["c"] = b.c;
  j["witness_n"] = b.witness_n;
  j["witness_z"] = to_json(b.witness_z);
  j["at_boundary"] = b.at_boundary;
  j["one_sided"] = b.one_sided;
  j["N"] = b.N;
  j["samples"] = b.samples;
  return j;
}

inline Json to_json(const RotationReport& r) {
  Json j;
  j["N"] = r.N;
  j["samples"] = r.samples;
  j["seed"] = r.seed;
  j["mean"] = to_json(r.mean);
  j["spread"] = r.spread;
  j["is_pseudo_rotation"] = r.is_pseudo_rotation;
  j["tol_pr"] = r.tol_pr;
  Json est = Json::array();
  for (PlaneVec e : r.estimates) est.push_back(to_json(e));
  j["estimates"] = est;
  Json hull = Json::array();
  for (PlaneVec h : r.hull) hull.push_back(to_json(h));
  j["hull"] = hull;
  if (r.bmm_available) j["bmm"] = to_json(r.bmm);
  return j;
}

inline std::string deviation_csv(const DeviationSeries& s) {
  std::string out = "n,D1,D2,Dv\n";
  for (long long n = s.n_min; n <= s.n_max; ++n) {
    PlaneVec d = s.at(n);
    out += std::to_string(n) + "," + format_double(d.x) + "," +
           format_double(d.y) + ",";
    if (s.v) out += format_double(s.dv_at(n));
    out += "\n";
  }
  return out;
}

inline Json to_json(const VectorClass& vc) {
  Json j;
  j["tag"] = to_string(vc.tag);
  if (vc.witness1)
    j["witness1"] = Json::array({vc.witness1->p, vc.witness1->q});
  if (vc.witness2)
    j["witness2"] = Json::array({vc.witness2->p, vc.witness2->q});
  if (vc.relation) {
    j["relation"] = Json::array(
        {vc.relation->k1, vc.relation->k2, vc.relation->k0});
    j["relation_residual"] = vc.relation->residual;
  }
  return j;
}

inline Json to_json(const Mat2i& m) {
  return Json::array({Json::array({m.a, m.b}), Json::array({m.c, m.d})});
}

inline Json to_json(const SemiConjugacy1D& sc) {
  Json j;
  j["rho0"] = sc.rho0;
  j["v"] = to_json(sc.frame.v);
  j["frame"] = to_json(sc.frame.A);
  j["b_row"] = to_json(sc.frame.b_row());
  j["N"] = sc.N;
  j["defect"] = sc.defect;
  j["displacement_bound"] = sc.displacement_bound;
  j["sup_at_boundary"] = sc.sup_at_boundary;
  Json samples = Json::array();
  for (PlaneVec z : sc.samples) samples.push_back(to_json(z));
  j["samples"] = samples;
  j["H"] = sc.H;
  return j;
}

inline std::string semiconj_csv(const SemiConjugacy1D& sc) {
  std::string out = "x,y,H\n";
  for (std::size_t i = 0; i < sc.samples.size(); ++i)
    out += format_double(sc.samples[i].x) + "," +
           format_double(sc.samples[i].y) + "," + format_double(sc.H[i]) +
           "\n";
  return out;
}

inline Json to_json(const SemiConjugacy2D& sc) {
  Json j;
  j["grid_n"] = sc.grid_n;
  j["level_count"] = sc.level_count;
  j["rho"] = to_json(sc.rho);
  j["defect1"] = sc.defect1;
  j["defect2"] = sc.defect2;
  j["seed"] = sc.seed;
  j["h1"] = sc.h1;
  j["h2"] = sc.h2;
  return j;
}

inline Json to_json(const Lamination& lam) {
  Json j;
  j["level_count"] = lam.level_count;
  j["cover_degree"] = lam.cover_degree;
  j["rho2"] = lam.rho2;
  j["c"] = lam.c;
  j["N"] = lam.N;
  j["levels"] = lam.levels;
  j["raster"] = Json::array(
      {lam.raster.nx, lam.raster.ny, lam.raster.y_min, lam.raster.y_max});
  j["rotation"] = to_json(lam.rotation);
  return j;
}

inline Json to_json(const TransitivityResult& t) {
  Json j;
  j["plausibly_transitive"] = t.plausibly_transitive;
  j["best_coverage"] = t.best_coverage;
  j["boxes_per_side"] = t.boxes_per_side;
  j["N"] = t.N;
  j["trials"] = t.trials;
  return j;
}

inline Json to_json(const PeriodicCircloidEvidence& ev) {
  Json j;
  j["found"] = ev.found;
  if (ev.found) {
    j["v"] = to_json(ev.v);
    j["lambda"] = Json::array({ev.lambda.p, ev.lambda.q});
    j["q"] = ev.q;
    j["frame"] = to_json(ev.frame);
    j["line_residual"] = ev.line_residual;
    j["c"] = ev.c;
    j["hausdorff_cells"] = ev.hausdorff;
    j["second_found"] = ev.second_found;
    j["circloid_cells"] = ev.circloid.count();
  }
  if (!ev.note.empty()) j["note"] = ev.note;
  return j;
}

inline Json to_json(const ClassificationReport& r) {
  Json j;
  j["schema"] = r.schema;
  j["map"] = r.map_name;
  j["seed"] = r.seed;
  j["rotation"] = to_json(r.rotation);
  j["rho_refined"] = to_json(r.rho_refined);
  j["vector_class"] = to_json(r.vclass);
  j["linearization"] = to_string(r.linearization);
  j["recurrence"] = to_string(r.recurrence);
  Json pts = Json::array();
  std::size_t cap = std::min<std::size_t>(r.periodic_points.size(), 64);
  for (std::size_t i = 0; i < cap; ++i) {
    const auto& c = r.periodic_points[i];
    Json p;
    p["z"] = to_json(c.z);
    p["q"] = c.q;
    p["p"] = to_json(c.p);
    p["residual"] = c.residual;
    pts.push_back(p);
  }
  j["periodic_point_count"] = r.periodic_points.size();
  j["periodic_points"] = pts;
  j["periodic_circloid"] = to_json(r.circloid);
  j["transitivity"] = to_json(r.transitivity);
  if (r.semiconj_defect1 >= 0) {
    j["semiconj_defect1"] = r.semiconj_defect1;
    j["semiconj_defect2"] = r.semiconj_defect2;
  }
  j["notes"] = r.notes;
  return j;
}

}  // namespace torodyn

#endif  // TORODYN_REPORTS_JSON_HPP
