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

#ifndef TORODYN_GEOMETRY_HPP
#define TORODYN_GEOMETRY_HPP

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <string>

#include "torodyn/error.hpp"

namespace torodyn {

// A point or vector in the universal cover (the plane).
struct PlaneVec {
  double x = 0.0;
  double y = 0.0;

  friend PlaneVec operator+(PlaneVec a, PlaneVec b) {
    return {a.x + b.x, a.y + b.y};
  }
  friend PlaneVec operator-(PlaneVec a, PlaneVec b) {
    return {a.x - b.x, a.y - b.y};
  }
  friend PlaneVec operator*(double s, PlaneVec a) { return {s * a.x, s * a.y}; }
  friend PlaneVec operator/(PlaneVec a, double s) { return {a.x / s, a.y / s}; }
  friend bool operator==(PlaneVec a, PlaneVec b) {
    return a.x == b.x && a.y == b.y;
  }
};

inline double dot(PlaneVec a, PlaneVec b) { return a.x * b.x + a.y * b.y; }
inline double norm(PlaneVec a) { return std::hypot(a.x, a.y); }
inline double norm_inf(PlaneVec a) {
  return std::max(std::abs(a.x), std::abs(a.y));
}
inline bool is_finite(PlaneVec a) {
  return std::isfinite(a.x) && std::isfinite(a.y);
}

// Fractional part in [0, 1).
inline double wrap01(double x) {
  double f = x - std::floor(x);
  if (f >= 1.0) f = 0.0;  // guards against x = -1e-17 style rounding
  return f;
}

inline PlaneVec wrap_torus(PlaneVec z) { return {wrap01(z.x), wrap01(z.y)}; }

// An integer (lattice) vector, kept in exact integer arithmetic.
struct LatticeVec {
  long long p = 0;
  long long q = 0;

  friend bool operator==(LatticeVec a, LatticeVec b) {
    return a.p == b.p && a.q == b.q;
  }
  friend LatticeVec operator-(LatticeVec a) { return {-a.p, -a.q}; }
};

inline long long gcd_ll(long long a, long long b) {
  a = std::abs(a);
  b = std::abs(b);
  while (b != 0) {
    long long t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline bool is_primitive(LatticeVec v) {
  if (v.p == 0 && v.q == 0) return false;
  return gcd_ll(v.p, v.q) == 1;
}

inline long long norm_sq(LatticeVec v) { return v.p * v.p + v.q * v.q; }

inline PlaneVec to_plane(LatticeVec v) {
  return {static_cast<double>(v.p), static_cast<double>(v.q)};
}

inline long long dot(LatticeVec a, LatticeVec b) {
  return a.p * b.p + a.q * b.q;
}

// 2x2 integer matrix, row-major: [[a b],[c d]].
struct Mat2i {
  long long a = 1, b = 0, c = 0, d = 1;

  static Mat2i identity() { return {1, 0, 0, 1}; }

  long long det() const { return a * d - b * c; }

  // Inverse of a matrix with det = +-1; exact.
  Mat2i inverse() const {
    long long dt = det();
    if (dt != 1 && dt != -1)
      throw ValidationError("Mat2i::inverse: determinant is not a unit");
    return {d / dt, -b / dt, -c / dt, a / dt};
  }

  LatticeVec apply(LatticeVec v) const {
    return {a * v.p + b * v.q, c * v.p + d * v.q};
  }
  PlaneVec apply(PlaneVec v) const {
    return {static_cast<double>(a) * v.x + static_cast<double>(b) * v.y,
            static_cast<double>(c) * v.x + static_cast<double>(d) * v.y};
  }
  LatticeVec col(int i) const {
    return i == 0 ? LatticeVec{a, c} : LatticeVec{b, d};
  }
  friend Mat2i operator*(const Mat2i& m, const Mat2i& n) {
    return {m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d,
            m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d};
  }
  friend bool operator==(const Mat2i& m, const Mat2i& n) {
    return m.a == n.a && m.b == n.b && m.c == n.c && m.d == n.d;
  }
};

// Extended gcd: returns g = gcd(a,b) and x, y with a*x + b*y = g.
inline long long ext_gcd(long long a, long long b, long long& x,
                         long long& y) {
  if (b == 0) {
    x = (a >= 0) ? 1 : -1;
    y = 0;
    return std::abs(a);
  }
  long long x1 = 0, y1 = 0;
  long long g = ext_gcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

}  // namespace torodyn

#endif  // TORODYN_GEOMETRY_HPP
