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

#ifndef TORODYN_ROTATION_HPP
#define TORODYN_ROTATION_HPP

#include <optional>
#include <string>
#include <vector>

#include "torodyn/hull.hpp"
#include "torodyn/lift.hpp"
#include "torodyn/rng.hpp"

namespace torodyn {

// Orbit walker that keeps the base point wrapped to [0,1)^2 and accumulates
// the displacement sum. By degree-1 periodicity the accumulated displacement
// equals F^n(z) - z; evaluating the map at wrapped arguments keeps rounding
// error flat in n instead of growing with the orbit diameter.
class WrappedOrbit {
 public:
  WrappedOrbit(const LiftMap& f, PlaneVec z) : f_(&f), w_(wrap_torus(z)) {}

  // Displacement F^n(z) - z accumulated so far.
  PlaneVec displacement() const { return acc_; }

  void step_forward() {
    PlaneVec img = f_->fwd(w_);
    acc_ = acc_ + (img - w_);
    w_ = wrap_torus(img);
  }

  void step_backward() {
    PlaneVec img = f_->inv(w_);
    acc_ = acc_ + (img - w_);
    w_ = wrap_torus(img);
  }

 private:
  const LiftMap* f_;
  PlaneVec w_;
  PlaneVec acc_;
};

// D(n, z) = F^n(z) - z - n*rho for n in [n_min, n_max].
struct DeviationSeries {
  PlaneVec z;
  PlaneVec rho;
  std::optional<PlaneVec> v;
  long long n_min = 0;
  long long n_max = 0;
  std::vector<PlaneVec> d;   // indexed by n - n_min
  std::vector<double> dv;    // <D, v>, filled when v is set

  PlaneVec at(long long n) const { return d[static_cast<std::size_t>(n - n_min)]; }
  double dv_at(long long n) const { return dv[static_cast<std::size_t>(n - n_min)]; }
};

inline DeviationSeries deviation(const LiftMap& f, PlaneVec rho,
                                 long long n_min, long long n_max,
                                 PlaneVec z) {
  if (n_min > n_max) throw ValidationError("deviation: empty n range");
  if (n_min < 0 && !f.has_inverse())
    throw IterationError("deviation: negative n requires an inverse");
  DeviationSeries s;
  s.z = z;
  s.rho = rho;
  s.n_min = n_min;
  s.n_max = n_max;
  s.d.assign(static_cast<std::size_t>(n_max - n_min + 1), PlaneVec{});
  auto record = [&](long long n, PlaneVec disp) {
    if (n < n_min || n > n_max) return;
    double nn = static_cast<double>(n);
    s.d[static_cast<std::size_t>(n - n_min)] =
        PlaneVec{disp.x - nn * rho.x, disp.y - nn * rho.y};
  };
  record(0, {0.0, 0.0});
  if (n_max > 0) {
    WrappedOrbit orbit(f, z);
    for (long long n = 1; n <= n_max; ++n) {
      orbit.step_forward();
      record(n, orbit.displacement());
    }
  }
  if (n_min < 0) {
    WrappedOrbit orbit(f, z);
    for (long long n = -1; n >= n_min; --n) {
      orbit.step_backward();
      record(n, orbit.displacement());
    }
  }
  return s;
}

inline DeviationSeries directional_deviation(const LiftMap& f, PlaneVec rho,
                                             PlaneVec v, long long n_min,
                                             long long n_max, PlaneVec z) {
  if (v.x == 0.0 && v.y == 0.0)
    throw ValidationError("directional_deviation: zero direction");
  DeviationSeries s = deviation(f, rho, n_min, n_max, z);
  s.v = v;
  s.dv.resize(s.d.size());
  for (std::size_t i = 0; i < s.d.size(); ++i) s.dv[i] = dot(s.d[i], v);
  return s;
}

struct RotationEstimate {
  PlaneVec rho;
  // (n, (F^n(z)-z)/n) at n = N/4, N/2, N.
  std::vector<std::pair<long long, PlaneVec>> trace;
};

inline RotationEstimate rotation_vector_estimate(const LiftMap& f, PlaneVec z,
                                                 long long N) {
  if (N < 100)
    throw ValidationError("rotation_vector_estimate: N must be >= 100");
  RotationEstimate out;
  WrappedOrbit orbit(f, z);
  for (long long n = 1; n <= N; ++n) {
    orbit.step_forward();
    if (n == N / 4 || n == N / 2 || n == N)
      out.trace.emplace_back(n, orbit.displacement() / static_cast<double>(n));
  }
  out.rho = out.trace.back().second;
  return out;
}

struct BmmEstimate {
  double c = 0.0;
  long long witness_n = 0;
  PlaneVec witness_z;
  bool at_boundary = false;  // max attained at |n| = N: extend N
  bool one_sided = false;    // no inverse: sup over n in [0, N] only
  long long N = 0;
  int samples = 0;
};

namespace detail {

template <typename Score>
inline void bmm_scan_orbit(const LiftMap& f, PlaneVec z, PlaneVec rho,
                           long long N, bool backward, Score&& score,
                           BmmEstimate& best) {
  WrappedOrbit orbit(f, z);
  for (long long k = 1; k <= N; ++k) {
    if (backward)
      orbit.step_backward();
    else
      orbit.step_forward();
    long long n = backward ? -k : k;
    PlaneVec disp = orbit.displacement();
    double nn = static_cast<double>(n);
    PlaneVec dev{disp.x - nn * rho.x, disp.y - nn * rho.y};
    double val = score(dev);
    if (val > best.c) {
      best.c = val;
      best.witness_n = n;
      best.witness_z = z;
      best.at_boundary = (k == N);
    }
  }
}

}  // namespace detail

// Truncated bounded-mean-motion constant: max over `samples` base points and
// |n| <= N of ||D(n,z)|| (or |<D, v>| when a direction is given). Monotone in
// both N and samples (for a fixed seed the sample list is prefix-stable).
inline BmmEstimate bmm_estimate(const LiftMap& f, PlaneVec rho,
                                std::optional<PlaneVec> v, long long N,
                                int samples, std::uint64_t seed,
                                bool require_two_sided = true) {
  if (require_two_sided && !f.has_inverse())
    throw IterationError(
        "bmm_estimate: inverse required for the two-sided sup");
  if (v && v->x == 0.0 && v->y == 0.0)
    throw ValidationError("bmm_estimate: zero direction");
  BmmEstimate best;
  best.N = N;
  best.samples = samples;
  best.one_sided = !f.has_inverse();
  Rng rng(seed);
  auto score = [&v](PlaneVec dev) {
    return v ? std::abs(dot(dev, *v)) : norm(dev);
  };
  for (int s = 0; s < samples; ++s) {
    PlaneVec z = rng.torus_point();
    detail::bmm_scan_orbit(f, z, rho, N, false, score, best);
    if (f.has_inverse()) detail::bmm_scan_orbit(f, z, rho, N, true, score, best);
  }
  return best;
}

struct RotationReport {
  std::vector<PlaneVec> estimates;
  std::vector<PlaneVec> hull;
  PlaneVec mean;
  double spread = 0.0;  // max pairwise distance of the estimates
  bool is_pseudo_rotation = false;
  double tol_pr = 1e-2;
  BmmEstimate bmm;
  bool bmm_available = false;
  long long N = 0;
  int samples = 0;
  std::uint64_t seed = 0;
};

// Fixed-N finite-difference estimates over random base points; the hull is an
// inner approximation of the rotation set. Convergence is exposed through the
// spread rather than hidden.
inline RotationReport rotation_set_estimate(const LiftMap& f, int sample_count,
                                            long long N, std::uint64_t seed,
                                            double tol_pr = 1e-2,
                                            long long bmm_N = 0,
                                            int bmm_samples = 0) {
  if (sample_count < 1)
    throw ValidationError("rotation_set_estimate: need at least one sample");
  RotationReport rep;
  rep.N = N;
  rep.samples = sample_count;
  rep.seed = seed;
  rep.tol_pr = tol_pr;
  Rng rng(seed);
  rep.estimates.reserve(sample_count);
  for (int s = 0; s < sample_count; ++s) {
    PlaneVec z = rng.torus_point();
    WrappedOrbit orbit(f, z);
    for (long long n = 0; n < N; ++n) orbit.step_forward();
    rep.estimates.push_back(orbit.displacement() / static_cast<double>(N));
  }
  rep.hull = convex_hull(rep.estimates);
  PlaneVec sum{0, 0};
  for (auto e : rep.estimates) sum = sum + e;
  rep.mean = sum / static_cast<double>(rep.estimates.size());
  for (std::size_t i = 0; i < rep.estimates.size(); ++i)
    for (std::size_t j = i + 1; j < rep.estimates.size(); ++j)
      rep.spread = std::max(rep.spread, norm(rep.estimates[i] - rep.estimates[j]));
  rep.is_pseudo_rotation = rep.spread <= tol_pr;
  if (bmm_N > 0 && bmm_samples > 0) {
    rep.bmm = bmm_estimate(f, rep.mean, std::nullopt, bmm_N, bmm_samples,
                           seed + 1, /*require_two_sided=*/false);
    rep.bmm_available = true;
  }
  return rep;
}

}  // namespace torodyn

#endif  // TORODYN_ROTATION_HPP
