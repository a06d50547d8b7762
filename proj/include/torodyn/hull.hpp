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

#ifndef TORODYN_HULL_HPP
#define TORODYN_HULL_HPP

#include <algorithm>
#include <cmath>
#include <vector>

#include "torodyn/geometry.hpp"

namespace torodyn {
namespace exact {

inline double two_sum(double a, double b, double& err) {
  double s = a + b;
  double bb = s - a;
  err = (a - (s - bb)) + (b - bb);
  return s;
}

inline double two_diff(double a, double b, double& err) {
  double s = a - b;
  double bb = s - a;
  err = (a - (s - bb)) - (b + bb);
  return s;
}

inline double two_prod(double a, double b, double& err) {
  double p = a * b;
  err = std::fma(a, b, -p);
  return p;
}

// Exact sign of a sum of doubles by repeated error-free transformation
// passes (distillation). Small n only; used as the slow path of orient2d.
inline int sign_of_sum(std::vector<double> v) {
  v.erase(std::remove(v.begin(), v.end(), 0.0), v.end());
  if (v.empty()) return 0;
  for (;;) {
    bool changed = false;
    for (std::size_t i = 1; i < v.size(); ++i) {
      double err;
      double s = two_sum(v[i - 1], v[i], err);
      if (err != v[i - 1] || s != v[i]) changed = true;
      v[i - 1] = err;
      v[i] = s;
    }
    v.erase(std::remove(v.begin(), v.end(), 0.0), v.end());
    if (v.empty()) return 0;
    if (!changed || v.size() == 1) break;
  }
  double big = v.back();
  for (double x : v)
    if (std::abs(x) > std::abs(big)) big = x;
  return big > 0 ? 1 : (big < 0 ? -1 : 0);
}

}  // namespace exact

// Sign of the cross product (b-a) x (c-a): +1 for a counter-clockwise turn,
// -1 clockwise, 0 collinear. Fast floating filter with a certified error
// bound, exact fallback.
inline int orient2d(PlaneVec a, PlaneVec b, PlaneVec c) {
  double detleft = (a.x - c.x) * (b.y - c.y);
  double detright = (a.y - c.y) * (b.x - c.x);
  double det = detleft - detright;
  double detsum = std::abs(detleft) + std::abs(detright);
  // 3.33e-16 ~ (3 + 16 eps) eps, the standard filter constant
  if (std::abs(det) > 3.3306690738754716e-16 * detsum)
    return det > 0 ? 1 : -1;

  // Exact path: expand each difference and each product error-free.
  double e1, e2, e3, e4;
  double acx = exact::two_diff(a.x, c.x, e1);
  double bcy = exact::two_diff(b.y, c.y, e2);
  double acy = exact::two_diff(a.y, c.y, e3);
  double bcx = exact::two_diff(b.x, c.x, e4);
  std::vector<double> terms;
  terms.reserve(16);
  auto add_product = [&terms](double u, double v, double sign) {
    double err;
    double p = exact::two_prod(u, v, err);
    terms.push_back(sign * p);
    terms.push_back(sign * err);
  };
  add_product(acx, bcy, +1.0);
  add_product(acx, e2, +1.0);
  add_product(e1, bcy, +1.0);
  add_product(e1, e2, +1.0);
  add_product(acy, bcx, -1.0);
  add_product(acy, e4, -1.0);
  add_product(e3, bcx, -1.0);
  add_product(e3, e4, -1.0);
  return exact::sign_of_sum(std::move(terms));
}

// Convex hull (counter-clockwise, strictly convex vertices) by monotone
// chain with the exact orientation predicate. Degenerate inputs collapse to
// a point or segment.
inline std::vector<PlaneVec> convex_hull(std::vector<PlaneVec> pts) {
  std::sort(pts.begin(), pts.end(), [](PlaneVec p, PlaneVec q) {
    return p.x < q.x || (p.x == q.x && p.y < q.y);
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  const std::size_t n = pts.size();
  if (n <= 2) return pts;
  std::vector<PlaneVec> h(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    while (k >= 2 && orient2d(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  std::size_t lower = k + 1;
  for (std::size_t i = n - 1; i-- > 0;) {
    while (k >= lower && orient2d(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

// True if q lies in the convex hull described by CCW vertices (boundary
// counts as inside).
inline bool hull_contains(const std::vector<PlaneVec>& hull, PlaneVec q) {
  if (hull.empty()) return false;
  if (hull.size() == 1) return hull[0].x == q.x && hull[0].y == q.y;
  if (hull.size() == 2) {
    if (orient2d(hull[0], hull[1], q) != 0) return false;
    double lo_x = std::min(hull[0].x, hull[1].x);
    double hi_x = std::max(hull[0].x, hull[1].x);
    double lo_y = std::min(hull[0].y, hull[1].y);
    double hi_y = std::max(hull[0].y, hull[1].y);
    return q.x >= lo_x && q.x <= hi_x && q.y >= lo_y && q.y <= hi_y;
  }
  for (std::size_t i = 0; i < hull.size(); ++i) {
    PlaneVec a = hull[i];
    PlaneVec b = hull[(i + 1) % hull.size()];
    if (orient2d(a, b, q) < 0) return false;
  }
  return true;
}

}  // namespace torodyn

#endif  // TORODYN_HULL_HPP
