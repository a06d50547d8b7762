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

#ifndef TORODYN_SEMICONJ1D_HPP
#define TORODYN_SEMICONJ1D_HPP

#include <array>
#include <optional>
#include <sstream>
#include <vector>

#include "torodyn/rational.hpp"
#include "torodyn/rotation.hpp"
#include "torodyn/unimodular.hpp"

namespace torodyn {

// Tabulated one-dimensional semi-conjugacy H along a finite sample of the
// invariant set. H(z) = max over |n| <= N of the first coordinate of the
// conjugated orbit minus n*rho0; regular with respect to the first row of
// the frame inverse.
struct SemiConjugacy1D {
  std::vector<PlaneVec> samples;
  std::vector<double> H;
  double rho0 = 0.0;
  UnimodularFrame frame;
  long long N = 0;
  double defect = 0.0;             // max |H(F(z)) - H(z) - rho0|
  double displacement_bound = 0.0; // max |H(z) - pi1(A^{-1} z)|
  bool sup_at_boundary = false;    // some sup attained at |n| = N
};

struct GhOptions {
  long long N = 1000;
  double defect_threshold = 1e-6;
  // Hypothesis gate: |<rho_est, v> - rho0| must be below this.
  double hyperplane_tol = 1e-3;
  long long rho_est_N = 100000;
  // rho0 must not look rational at (q_max, rational_tol) unless disabled.
  bool require_irrational = true;
  long long q_max = 50;
  double rational_tol = 1e-9;
  bool throw_on_defect = true;
};

// Default sample of the invariant set: a long forward orbit of one point
// plus uniform random points (the oscillation diagnostic reports whether this
// sample behaves minimally; the construction itself cannot decide that).
inline std::vector<PlaneVec> make_k_sample(const LiftMap& f,
                                           int orbit_len = 10000,
                                           int random_extra = 1000,
                                           std::uint64_t seed = 7) {
  std::vector<PlaneVec> ks;
  ks.reserve(orbit_len + random_extra);
  Rng rng(seed);
  PlaneVec z = rng.torus_point();
  for (int i = 0; i < orbit_len; ++i) {
    ks.push_back(z);
    z = wrap_torus(f.fwd(z));
  }
  for (int i = 0; i < random_extra; ++i) ks.push_back(rng.torus_point());
  return ks;
}

namespace detail {

// max (or min) over |n| <= N of pi1 of the conjugated orbit minus n*rho0,
// via wrapped displacement accumulation. Also reports whether the extremum
// sits on the truncation boundary.
struct SupScan {
  double sup;
  double inf;
  bool sup_at_boundary;
};

inline SupScan scan_sup(const LiftMap& ft, PlaneVec zt, double rho0,
                        long long N) {
  double base = zt.x;
  SupScan r{base, base, false};
  long long arg_sup = 0;
  auto run = [&](bool backward) {
    WrappedOrbit orbit(ft, zt);
    for (long long k = 1; k <= N; ++k) {
      if (backward)
        orbit.step_backward();
      else
        orbit.step_forward();
      long long n = backward ? -k : k;
      double term = base + orbit.displacement().x -
                    static_cast<double>(n) * rho0;
      if (term > r.sup) {
        r.sup = term;
        arg_sup = n;
      }
      if (term < r.inf) r.inf = term;
    }
  };
  run(false);
  if (ft.has_inverse()) run(true);
  r.sup_at_boundary = (std::abs(arg_sup) == N);
  return r;
}

}  // namespace detail

// Builds the 1-d semi-conjugacy for direction v and rotation number rho0.
// Preconditions checked empirically: the directional rotation number of F
// matches rho0 (hyperplane hypothesis), rho0 is irrational-classified, and
// the truncated sup yields a defect below threshold. Failures throw with
// diagnostics.
inline SemiConjugacy1D gh_semiconjugacy(const LiftMap& f, LatticeVec v,
                                        double rho0,
                                        const std::vector<PlaneVec>& k_sample,
                                        const GhOptions& opts = {}) {
  if (!f.has_inverse())
    throw IterationError("gh_semiconjugacy: inverse required (sup over n in Z)");
  UnimodularFrame frame = unimodular_completion(v);

  if (opts.require_irrational) {
    Rational r = best_rational(rho0, opts.q_max);
    if (std::abs(rho0 - r.value()) <= opts.rational_tol) {
      std::ostringstream os;
      os << "gh_semiconjugacy: rho0 = " << rho0
         << " is rational within tolerance (" << r.p << "/" << r.q << ")";
      throw ConstructionError(os.str());
    }
  }

  // Directional rotation number check: <rho(F), v> must equal rho0.
  PlaneVec rho_est;
  if (f.declared_rho) {
    rho_est = *f.declared_rho;
  } else {
    rho_est = rotation_vector_estimate(f, PlaneVec{0.13, 0.37}, opts.rho_est_N)
                  .rho;
  }
  double dir_rot = dot(rho_est, to_plane(v));
  if (std::abs(dir_rot - rho0) > opts.hyperplane_tol) {
    std::ostringstream os;
    os << "gh_semiconjugacy: hyperplane hypothesis fails: directional "
          "rotation number <rho, v> = "
       << dir_rot << " but rho0 = " << rho0;
    throw ConstructionError(os.str());
  }

  LiftMap ft = conjugate_lift(f, frame);
  SemiConjugacy1D out;
  out.samples = k_sample;
  out.rho0 = rho0;
  out.frame = frame;
  out.N = opts.N;
  out.H.resize(k_sample.size());
  for (std::size_t i = 0; i < k_sample.size(); ++i) {
    PlaneVec zt = frame.A_inv.apply(k_sample[i]);
    auto scan = detail::scan_sup(ft, zt, rho0, opts.N);
    out.H[i] = scan.sup;
    out.sup_at_boundary = out.sup_at_boundary || scan.sup_at_boundary;
    out.displacement_bound =
        std::max(out.displacement_bound, std::abs(scan.sup - zt.x));
    // defect |H(F(z)) - H(z) - rho0|, using A^{-1} F(z) = Ft(zt)
    auto scan_img = detail::scan_sup(ft, ft.fwd(zt), rho0, opts.N);
    out.defect =
        std::max(out.defect, std::abs(scan_img.sup - scan.sup - rho0));
  }
  if (opts.throw_on_defect && out.defect > opts.defect_threshold) {
    std::ostringstream os;
    os << "gh_semiconjugacy: defect " << out.defect << " above threshold "
       << opts.defect_threshold
       << (out.sup_at_boundary
               ? " (sup attained at |n| = N: increase N)"
               : " (bounded mean motion hypothesis may fail)");
    throw ConstructionError(os.str());
  }
  return out;
}

// Oscillation diagnostic from the continuity argument: phi(z) - psi(z) where
// phi/psi are the sup/inf of the directional deviations along the orbit.
// Returns (max, min) over the samples; a small spread indicates the sample
// behaves minimally. Purely diagnostic, enforces no hypothesis.
struct OscDiagnostic {
  double max_osc = 0.0;
  double min_osc = 0.0;
  double spread() const { return max_osc - min_osc; }
};

inline OscDiagnostic osc_diagnostic(const LiftMap& f, LatticeVec v,
                                    double rho0,
                                    const std::vector<PlaneVec>& k_sample,
                                    long long N) {
  if (!f.has_inverse())
    throw IterationError("osc_diagnostic: inverse required");
  UnimodularFrame frame = unimodular_completion(v);
  LiftMap ft = conjugate_lift(f, frame);
  OscDiagnostic out;
  bool first = true;
  for (PlaneVec z : k_sample) {
    PlaneVec zt = frame.A_inv.apply(z);
    auto scan = detail::scan_sup(ft, zt, rho0, N);
    double osc = scan.sup - scan.inf;
    if (first) {
      out.max_osc = out.min_osc = osc;
      first = false;
    } else {
      out.max_osc = std::max(out.max_osc, osc);
      out.min_osc = std::min(out.min_osc, osc);
    }
  }
  return out;
}

// Product of 1-d semi-conjugacies sharing a sample set: h = (h_1, ..., h_k)
// mod 1. The target rotation vector must classify as totally irrational
// unless the gate is explicitly relaxed for diagnostics.
struct ProductSemiConjugacy {
  std::vector<PlaneVec> samples;
  std::vector<std::array<double, 2>> values;  // h_i(z) mod 1; unused = 0
  int k = 0;
  std::array<double, 2> rho{0.0, 0.0};
  double defect = 0.0;
};

inline ProductSemiConjugacy product_semiconjugacy(
    const std::vector<SemiConjugacy1D>& parts, bool require_totally_irrational = true,
    long long q_max = 50, double relation_tol = 1e-6) {
  if (parts.empty() || parts.size() > 2)
    throw ValidationError("product_semiconjugacy: need 1 or 2 parts");
  for (std::size_t i = 1; i < parts.size(); ++i) {
    if (parts[i].samples.size() != parts[0].samples.size())
      throw ValidationError("product_semiconjugacy: inconsistent samples");
    for (std::size_t j = 0; j < parts[0].samples.size(); ++j)
      if (!(parts[i].samples[j] == parts[0].samples[j]))
        throw ValidationError("product_semiconjugacy: inconsistent samples");
  }
  if (parts.size() == 2 && require_totally_irrational) {
    VectorClass vc = classify_rotation_vector(
        {parts[0].rho0, parts[1].rho0}, q_max, relation_tol);
    if (vc.tag != VectorClassTag::kTotallyIrrational)
      throw ConstructionError(
          "product_semiconjugacy: target rotation vector is not totally "
          "irrational (" + to_string(vc.tag) + ")");
  }
  ProductSemiConjugacy out;
  out.k = static_cast<int>(parts.size());
  out.samples = parts[0].samples;
  out.values.resize(out.samples.size(), {0.0, 0.0});
  for (std::size_t p = 0; p < parts.size(); ++p) {
    out.rho[p] = wrap01(parts[p].rho0);
    out.defect = std::max(out.defect, parts[p].defect);
    for (std::size_t j = 0; j < out.samples.size(); ++j)
      out.values[j][p] = wrap01(parts[p].H[j]);
  }
  return out;
}

// The lift F + (0, k) whose vertical rotation number is target_vertical;
// the target must be congruent to the current vertical number mod 1.
inline LiftMap select_lift(const LiftMap& f, double target_vertical,
                           long long rho_est_N = 100000, double tol = 1e-6) {
  double rho2;
  if (f.declared_rho) {
    rho2 = f.declared_rho->y;
  } else {
    rho2 = rotation_vector_estimate(f, PlaneVec{0.13, 0.37}, rho_est_N).rho.y;
  }
  double k = std::round(target_vertical - rho2);
  if (std::abs(target_vertical - rho2 - k) > tol) {
    std::ostringstream os;
    os << "select_lift: target " << target_vertical
       << " is not an integer shift of the vertical rotation number " << rho2;
    throw ValidationError(os.str());
  }
  if (k == 0.0) return f;
  return shift_lift_vertical(f, static_cast<long long>(k));
}

}  // namespace torodyn

#endif  // TORODYN_SEMICONJ1D_HPP
