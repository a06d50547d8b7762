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

#ifndef TORODYN_MAPDEF_HPP
#define TORODYN_MAPDEF_HPP

#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>

#include "torodyn/expr.hpp"
#include "torodyn/lift.hpp"
#include "torodyn/rng.hpp"

namespace torodyn {

// A user-level map definition: expressions for the lift, optionally an
// analytic inverse pair, plus declared parameters. Immutable value.
struct MapDef {
  std::string name;
  Expr fx, fy;
  std::optional<Expr> inv_fx, inv_fy;
  std::map<std::string, double> params;
  std::optional<PlaneVec> declared_rho;
  // Builtin doubly-perturbed maps get their inverse by fixed-point iteration
  // instead of an expression pair.
  bool fixed_point_inverse = false;

  bool has_inverse() const {
    return (inv_fx && inv_fy) || fixed_point_inverse;
  }
};

inline LiftMap to_lift(const MapDef& m) {
  LiftMap f;
  f.name = m.name;
  f.declared_rho = m.declared_rho;
  Expr fx = m.fx, fy = m.fy;
  f.fwd = [fx, fy](PlaneVec z) {
    return PlaneVec{fx.eval(z.x, z.y), fy.eval(z.x, z.y)};
  };
  f.vertical_shift_equivariant =
      !m.fx.depends_on_y() && m.fy.is_y_plus_x_only();
  if (m.inv_fx && m.inv_fy) {
    Expr gx = *m.inv_fx, gy = *m.inv_fy;
    f.inv = [gx, gy](PlaneVec z) {
      return PlaneVec{gx.eval(z.x, z.y), gy.eval(z.x, z.y)};
    };
  } else if (m.fixed_point_inverse) {
    // Iterate u = x - (fx(u,v) - u'), the contraction given by small
    // perturbation amplitudes. 64 rounds reach fixed precision well below
    // 1e-14 for amplitudes < 1/(2*pi).
    f.inv = [fx, fy](PlaneVec z) {
      PlaneVec u = z;
      for (int i = 0; i < 64; ++i) {
        double nx = z.x - (fx.eval(u.x, u.y) - u.x);
        double ny = z.y - (fy.eval(u.x, u.y) - u.y);
        if (nx == u.x && ny == u.y) break;
        u = {nx, ny};
      }
      return u;
    };
  }
  return f;
}

// Exchanges the two coordinates: returns S o f o S with S(x,y) = (y,x).
inline MapDef swap_conjugate(const MapDef& m) {
  MapDef s;
  s.name = m.name + "-swapped";
  s.fx = m.fy.swapped_xy();
  s.fy = m.fx.swapped_xy();
  if (m.inv_fx && m.inv_fy) {
    s.inv_fx = m.inv_fy->swapped_xy();
    s.inv_fy = m.inv_fx->swapped_xy();
  }
  s.fixed_point_inverse = m.fixed_point_inverse;
  s.params = m.params;
  if (m.declared_rho)
    s.declared_rho = PlaneVec{m.declared_rho->y, m.declared_rho->x};
  return s;
}

struct LiftValidation {
  bool ok = true;
  double worst_residual = 0.0;
  PlaneVec worst_z;
  LatticeVec worst_k;
  bool injectivity_suspect = false;
  std::string message;
};

// Samples the degree-1 periodicity F(z + e^i) - F(z) = e^i at random points.
// Optionally spot-checks injectivity (a coarse heuristic, not a proof).
inline LiftValidation validate_lift(const MapDef& m, int samples,
                                    double eps_per = 1e-6,
                                    std::uint64_t seed = 20260809,
                                    bool injectivity_check = false) {
  if (samples < 16)
    throw ValidationError("validate_lift: samples must be >= 16");
  LiftMap f = to_lift(m);
  Rng rng(seed);
  LiftValidation rep;
  const LatticeVec ks[2] = {{1, 0}, {0, 1}};
  for (int s = 0; s < samples; ++s) {
    PlaneVec z{rng.range(-2.0, 2.0), rng.range(-2.0, 2.0)};
    PlaneVec fz = f(z);
    for (auto k : ks) {
      PlaneVec zk{z.x + static_cast<double>(k.p),
                  z.y + static_cast<double>(k.q)};
      PlaneVec fzk = f(zk);
      PlaneVec resid{fzk.x - fz.x - static_cast<double>(k.p),
                     fzk.y - fz.y - static_cast<double>(k.q)};
      double r = norm_inf(resid);
      if (r > rep.worst_residual) {
        rep.worst_residual = r;
        rep.worst_z = z;
        rep.worst_k = k;
      }
    }
  }
  if (rep.worst_residual > eps_per) {
    rep.ok = false;
    std::ostringstream os;
    os << "periodicity violation: residual " << rep.worst_residual << " at z=("
       << rep.worst_z.x << "," << rep.worst_z.y << "), k=(" << rep.worst_k.p
       << "," << rep.worst_k.q << ")";
    rep.message = os.str();
    return rep;
  }
  if (injectivity_check) {
    const int n = 1000;
    std::vector<PlaneVec> imgs(n);
    std::vector<PlaneVec> srcs(n);
    for (int i = 0; i < n; ++i) {
      srcs[i] = rng.torus_point();
      imgs[i] = wrap_torus(f(srcs[i]));
    }
    for (int i = 0; i < n && !rep.injectivity_suspect; ++i)
      for (int j = i + 1; j < n; ++j) {
        if (norm(imgs[i] - imgs[j]) < 1e-6 && norm(srcs[i] - srcs[j]) > 1e-3) {
          rep.injectivity_suspect = true;
          rep.message = "injectivity spot-check: two distant points map "
                        "within 1e-6 of each other";
          break;
        }
      }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Builtin parametric families.

inline MapDef builtin_rigid(double r1, double r2) {
  MapDef m;
  m.name = "rigid";
  m.fx = Expr::parse("x + " + format_double(r1));
  m.fy = Expr::parse("y + " + format_double(r2));
  m.inv_fx = Expr::parse("x - " + format_double(r1));
  m.inv_fy = Expr::parse("y - " + format_double(r2));
  m.params = {{"rho1", r1}, {"rho2", r2}};
  m.declared_rho = PlaneVec{r1, r2};
  return m;
}

// F(x,y) = (x + rho1, y + rho2 + a sin(2 pi x)); analytic inverse.
inline MapDef builtin_skew(double r1, double r2, double a) {
  MapDef m;
  m.name = "skew";
  std::string sr1 = format_double(r1);
  m.fx = Expr::parse("x + " + sr1);
  m.fy = Expr::parse("y + " + format_double(r2) + " + " + format_double(a) +
                     "*sin(2*pi*x)");
  m.inv_fx = Expr::parse("x - " + sr1);
  m.inv_fy = Expr::parse("y - " + format_double(r2) + " - " +
                         format_double(a) + "*sin(2*pi*(x - " + sr1 + "))");
  m.params = {{"rho1", r1}, {"rho2", r2}, {"a", a}};
  m.declared_rho = PlaneVec{r1, r2};
  return m;
}

// F(x,y) = (x + rho1 + a sin(2 pi y), y + rho2 + b sin(2 pi x)).
// |a|, |b| < 1/(2 pi) keeps it a homeomorphism; inverse by fixed point.
inline MapDef builtin_doubly_perturbed(double r1, double r2, double a,
                                       double b) {
  const double bound = 1.0 / (2.0 * std::numbers::pi_v<double>);
  if (std::abs(a) >= bound || std::abs(b) >= bound)
    throw ValidationError(
        "doubly-perturbed: amplitudes must satisfy |a|,|b| < 1/(2*pi)");
  MapDef m;
  m.name = "doubly-perturbed";
  m.fx = Expr::parse("x + " + format_double(r1) + " + " + format_double(a) +
                     "*sin(2*pi*y)");
  m.fy = Expr::parse("y + " + format_double(r2) + " + " + format_double(b) +
                     "*sin(2*pi*x)");
  m.fixed_point_inverse = true;
  m.params = {{"rho1", r1}, {"rho2", r2}, {"a", a}, {"b", b}};
  return m;
}

// ---------------------------------------------------------------------------
// Map file format (INI-style):
//
//   [map]
//   name = "golden-skew"
//   fx = "x + 0.6180339887"
//   fy = "y + 0.05*sin(2*pi*x)"
//   inv_fx = "..."        (optional)
//   inv_fy = "..."        (optional)
//
// Keys are case-sensitive; unknown keys are errors. Lines starting with '#'
// are comments.

namespace detail {
inline std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}
inline std::string unquote(const std::string& s, std::size_t offset) {
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"')
    return s.substr(1, s.size() - 2);
  if (!s.empty() && (s.front() == '"' || s.back() == '"'))
    throw ParseError("unbalanced quotes in map file value", offset);
  return s;
}
}  // namespace detail

inline MapDef parse_map_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  bool in_map_section = false;
  std::map<std::string, std::string> kv;
  std::size_t offset = 0;
  while (std::getline(in, line)) {
    std::size_t line_offset = offset;
    offset += line.size() + 1;
    std::string t = detail::trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (t.front() == '[') {
      if (t == "[map]") {
        in_map_section = true;
        continue;
      }
      throw ParseError("unknown section " + t, line_offset);
    }
    if (!in_map_section)
      throw ParseError("key outside [map] section", line_offset);
    std::size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw ParseError("expected key = value", line_offset);
    std::string key = detail::trim(t.substr(0, eq));
    std::string val = detail::unquote(detail::trim(t.substr(eq + 1)),
                                      line_offset + eq + 1);
    if (key != "name" && key != "fx" && key != "fy" && key != "inv_fx" &&
        key != "inv_fy")
      throw ParseError("unknown key '" + key + "'", line_offset);
    if (kv.count(key))
      throw ParseError("duplicate key '" + key + "'", line_offset);
    kv[key] = val;
  }
  if (!in_map_section) throw ParseError("missing [map] section", 0);
  if (!kv.count("fx") || !kv.count("fy"))
    throw ParseError("map file must define fx and fy", 0);
  MapDef m;
  m.name = kv.count("name") ? kv["name"] : "unnamed";
  m.fx = Expr::parse(kv["fx"]);
  m.fy = Expr::parse(kv["fy"]);
  if (kv.count("inv_fx") != kv.count("inv_fy"))
    throw ParseError("inv_fx and inv_fy must be given together", 0);
  if (kv.count("inv_fx")) {
    m.inv_fx = Expr::parse(kv["inv_fx"]);
    m.inv_fy = Expr::parse(kv["inv_fy"]);
  }
  return m;
}

inline MapDef load_map_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open map file '" + path + "'", 0);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_map_text(ss.str());
}

inline std::string map_to_text(const MapDef& m) {
  std::ostringstream os;
  os << "[map]\n";
  os << "name = \"" << m.name << "\"\n";
  os << "fx = \"" << m.fx.str() << "\"\n";
  os << "fy = \"" << m.fy.str() << "\"\n";
  if (m.inv_fx && m.inv_fy) {
    os << "inv_fx = \"" << m.inv_fx->str() << "\"\n";
    os << "inv_fy = \"" << m.inv_fy->str() << "\"\n";
  }
  return os.str();
}

}  // namespace torodyn

#endif  // TORODYN_MAPDEF_HPP
