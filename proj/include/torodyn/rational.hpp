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

#ifndef TORODYN_RATIONAL_HPP
#define TORODYN_RATIONAL_HPP

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>

#include "torodyn/geometry.hpp"

namespace torodyn {

struct Rational {
  long long p = 0;
  long long q = 1;
  double value() const {
    return static_cast<double>(p) / static_cast<double>(q);
  }
  friend bool operator==(Rational a, Rational b) {
    return a.p == b.p && a.q == b.q;
  }
};

// Best rational approximation p/q to x with q <= q_max, via the continued
// fraction convergents and the final semiconvergent.
inline Rational best_rational(double x, long long q_max) {
  if (q_max < 1) q_max = 1;
  long long p_prev = 1, q_prev = 0;  // h_{-1}/k_{-1}
  long long p_cur = static_cast<long long>(std::floor(x)), q_cur = 1;
  double frac = x - std::floor(x);
  // convergents
  while (frac > 1e-15) {
    double inv = 1.0 / frac;
    double a_f = std::floor(inv);
    if (a_f > 9.0e18) break;
    long long a = static_cast<long long>(a_f);
    frac = inv - a_f;
    long long p_next = a * p_cur + p_prev;
    long long q_next = a * q_cur + q_prev;
    if (q_next > q_max || q_next <= 0) {
      // best semiconvergent with denominator <= q_max
      long long t = (q_max - q_prev) / q_cur;
      long long p_semi = t * p_cur + p_prev;
      long long q_semi = t * q_cur + q_prev;
      if (q_semi >= 1) {
        double err_semi = std::abs(x - static_cast<double>(p_semi) / q_semi);
        double err_cur = std::abs(x - static_cast<double>(p_cur) / q_cur);
        if (err_semi < err_cur) return {p_semi, q_semi};
      }
      return {p_cur, q_cur};
    }
    p_prev = p_cur;
    q_prev = q_cur;
    p_cur = p_next;
    q_cur = q_next;
  }
  return {p_cur, q_cur};
}

struct IntegerRelation {
  long long k1 = 0, k2 = 0, k0 = 0;
  double residual = 0.0;
};

// Smallest-residual relation k1*r1 + k2*r2 + k0 with 0 < max(|k1|,|k2|)
// <= k_max, by exhaustive scan (k0 is the nearest integer for each pair).
// Ties go to the shortest coefficient vector.
inline IntegerRelation best_integer_relation(double r1, double r2,
                                             long long k_max) {
  IntegerRelation best;
  best.residual = std::numeric_limits<double>::infinity();
  long long best_norm = 0;
  for (long long k1 = -k_max; k1 <= k_max; ++k1) {
    for (long long k2 = -k_max; k2 <= k_max; ++k2) {
      if (k1 == 0 && k2 == 0) continue;
      double s = static_cast<double>(k1) * r1 + static_cast<double>(k2) * r2;
      long long k0 = static_cast<long long>(std::llround(-s));
      double res = std::abs(s + static_cast<double>(k0));
      long long norm = k1 * k1 + k2 * k2;
      if (res < best.residual ||
          (res == best.residual && norm < best_norm)) {
        best = {k1, k2, k0, res};
        best_norm = norm;
      }
    }
  }
  return best;
}

enum class VectorClassTag { kRational, kTotallyIrrational, kMixed };

inline std::string to_string(VectorClassTag t) {
  switch (t) {
    case VectorClassTag::kRational:          return "Rational";
    case VectorClassTag::kTotallyIrrational: return "TotallyIrrational";
    case VectorClassTag::kMixed:             return "Mixed";
  }
  return "?";
}

struct VectorClass {
  VectorClassTag tag = VectorClassTag::kMixed;
  std::optional<Rational> witness1, witness2;  // per coordinate, if rational
  std::optional<IntegerRelation> relation;     // if one exists within tol
};

// Arithmetic classification of a rotation vector at tolerance `tol`:
//  - Rational: both coordinates within tol of p/q with q <= q_max;
//  - TotallyIrrational: no integer relation with coefficients up to q_max
//    comes within tol of zero;
//  - Mixed: otherwise. Witnesses are attached either way. Undecidable in
//  floating point, so this is an explicitly tolerance-parameterized verdict.
inline VectorClass classify_rotation_vector(PlaneVec rho, long long q_max = 50,
                                            double tol = 1e-6) {
  if (q_max < 2)
    throw ValidationError("classify_rotation_vector: q_max must be >= 2");
  VectorClass out;
  Rational r1 = best_rational(rho.x, q_max);
  Rational r2 = best_rational(rho.y, q_max);
  bool rat1 = std::abs(rho.x - r1.value()) <= tol;
  bool rat2 = std::abs(rho.y - r2.value()) <= tol;
  if (rat1) out.witness1 = r1;
  if (rat2) out.witness2 = r2;
  if (rat1 && rat2) {
    out.tag = VectorClassTag::kRational;
    return out;
  }
  IntegerRelation rel = best_integer_relation(rho.x, rho.y, q_max);
  if (rel.residual <= tol) {
    out.relation = rel;
    out.tag = VectorClassTag::kMixed;
  } else {
    out.tag = VectorClassTag::kTotallyIrrational;
    out.relation = rel;  // best (failing) relation, for diagnostics
  }
  return out;
}

}  // namespace torodyn

#endif  // TORODYN_RATIONAL_HPP
