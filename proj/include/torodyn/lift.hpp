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

#ifndef TORODYN_LIFT_HPP
#define TORODYN_LIFT_HPP

#include <functional>
#include <optional>
#include <string>
#include <utility>

#include "torodyn/error.hpp"
#include "torodyn/geometry.hpp"

namespace torodyn {

// A lift F of a torus homeomorphism homotopic to the identity:
// F(z + k) = F(z) + k for integer vectors k. All dynamics runs through this
// type. Immutable value; safe to copy and share between workers.
struct LiftMap {
  std::function<PlaneVec(PlaneVec)> fwd;
  std::function<PlaneVec(PlaneVec)> inv;  // may be empty
  std::optional<PlaneVec> declared_rho;
  std::string name;
  // True if F commutes with every vertical translation (x-image independent
  // of y, y-image of the form y + g(x)). Enables the co-moving fast path in
  // the lamination builder.
  bool vertical_shift_equivariant = false;

  bool has_inverse() const { return static_cast<bool>(inv); }

  PlaneVec operator()(PlaneVec z) const { return fwd(z); }
};

inline constexpr long long kDefaultIterationBudget = 1000000;

// F^n(z) by repeated composition; n may be negative if an inverse is present.
inline PlaneVec iterate_lift(const LiftMap& f, long long n, PlaneVec z,
                             long long budget = kDefaultIterationBudget) {
  if (n == 0) return z;
  if (std::abs(n) > budget)
    throw IterationError("iteration budget exceeded: |n| = " +
                         std::to_string(std::abs(n)) + " > " +
                         std::to_string(budget));
  if (n < 0 && !f.has_inverse())
    throw IterationError("negative iterate requested but map '" + f.name +
                         "' has no inverse");
  if (n > 0) {
    for (long long i = 0; i < n; ++i) z = f.fwd(z);
  } else {
    for (long long i = 0; i < -n; ++i) z = f.inv(z);
  }
  return z;
}

// The lift F + (0, k) obtained by composing with a vertical deck translation.
inline LiftMap shift_lift_vertical(const LiftMap& f, long long k) {
  LiftMap g = f;
  double dk = static_cast<double>(k);
  auto fw = f.fwd;
  g.fwd = [fw, dk](PlaneVec z) {
    PlaneVec w = fw(z);
    return PlaneVec{w.x, w.y + dk};
  };
  if (f.has_inverse()) {
    auto iv = f.inv;
    g.inv = [iv, dk](PlaneVec z) {
      return iv(PlaneVec{z.x, z.y - dk});
    };
  }
  if (f.declared_rho)
    g.declared_rho = PlaneVec{f.declared_rho->x, f.declared_rho->y + dk};
  g.name = f.name + (k >= 0 ? "+(0," : "-(0,") + std::to_string(std::abs(k)) +
           ")";
  return g;
}

// Lift of f^q (as a single LiftMap, so it can be conjugated and laminated).
inline LiftMap power_lift(const LiftMap& f, long long q) {
  if (q < 1) throw ValidationError("power_lift: q must be >= 1");
  LiftMap g;
  LiftMap base = f;
  g.fwd = [base, q](PlaneVec z) {
    for (long long i = 0; i < q; ++i) z = base.fwd(z);
    return z;
  };
  if (f.has_inverse()) {
    g.inv = [base, q](PlaneVec z) {
      for (long long i = 0; i < q; ++i) z = base.inv(z);
      return z;
    };
  }
  if (f.declared_rho)
    g.declared_rho = static_cast<double>(q) * (*f.declared_rho);
  g.name = f.name + "^" + std::to_string(q);
  g.vertical_shift_equivariant = f.vertical_shift_equivariant;
  return g;
}

}  // namespace torodyn

#endif  // TORODYN_LIFT_HPP
