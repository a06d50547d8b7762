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

#ifndef TORODYN_UNIMODULAR_HPP
#define TORODYN_UNIMODULAR_HPP

#include <string>

#include "torodyn/geometry.hpp"
#include "torodyn/lift.hpp"

namespace torodyn {

// Completion of a primitive integer vector v to a unimodular basis. Columns
// of A are (w1, w2) with w2 perpendicular to v and <A^{-1} v, e1> = |v|^2,
// so that conjugating by A turns the v-component of rotation vectors into
// the first coordinate. All arithmetic exact in 64-bit integers.
struct UnimodularFrame {
  LatticeVec v;
  Mat2i A;
  Mat2i A_inv;

  // First row of A^{-1}: the integer functional the 1-d semi-conjugacy is
  // regular with respect to.
  LatticeVec b_row() const { return {A_inv.a, A_inv.b}; }
};

inline UnimodularFrame unimodular_completion(LatticeVec v) {
  if (v.p == 0 && v.q == 0)
    throw ValidationError("unimodular_completion: v must be nonzero");
  if (!is_primitive(v))
    throw ValidationError("unimodular_completion: gcd(v1, v2) = " +
                          std::to_string(gcd_ll(v.p, v.q)) + " != 1");
  LatticeVec w2{-v.q, v.p};
  long long a = 0, b = 0;
  ext_gcd(v.p, v.q, a, b);  // a*v1 + b*v2 = 1
  LatticeVec w1{a, b};
  UnimodularFrame fr;
  fr.v = v;
  fr.A = Mat2i{w1.p, w2.p, w1.q, w2.q};
  if (fr.A.det() != 1)
    throw Error("unimodular_completion: internal determinant failure");
  fr.A_inv = fr.A.inverse();
  LatticeVec img = fr.A_inv.apply(v);
  if (img.p != norm_sq(v) || dot(w2, v) != 0)
    throw Error("unimodular_completion: internal frame invariant failure");
  return fr;
}

// Variant used by periodic-circloid detection: sends the v-component to the
// *second* (vertical) coordinate, <M^{-1} v, e2> = |v|^2, so circloid
// machinery on horizontal circles applies in the conjugated coordinates.
inline UnimodularFrame vertical_frame(LatticeVec v) {
  if (!is_primitive(v))
    throw ValidationError("vertical_frame: v must be primitive");
  long long a = 0, b = 0;
  ext_gcd(v.p, v.q, a, b);
  LatticeVec u{a, b};          // <v, u> = 1
  LatticeVec c1{v.q, -v.p};    // perpendicular to v
  UnimodularFrame fr;
  fr.v = v;
  fr.A = Mat2i{c1.p, u.p, c1.q, u.q};
  if (fr.A.det() != 1)
    throw Error("vertical_frame: internal determinant failure");
  fr.A_inv = fr.A.inverse();
  LatticeVec img = fr.A_inv.apply(v);
  if (img.q != norm_sq(v))
    throw Error("vertical_frame: internal frame invariant failure");
  return fr;
}

// The conjugated lift A^{-1} o F o A. Unimodularity preserves degree-1
// periodicity; declared rotation data transforms linearly.
inline LiftMap conjugate_lift(const LiftMap& f, const UnimodularFrame& frame) {
  LiftMap g;
  Mat2i A = frame.A, Ainv = frame.A_inv;
  auto fwd = f.fwd;
  g.fwd = [fwd, A, Ainv](PlaneVec z) { return Ainv.apply(fwd(A.apply(z))); };
  if (f.has_inverse()) {
    auto inv = f.inv;
    g.inv = [inv, A, Ainv](PlaneVec z) { return Ainv.apply(inv(A.apply(z))); };
  }
  if (f.declared_rho) g.declared_rho = Ainv.apply(*f.declared_rho);
  g.name = f.name + "~[" + std::to_string(A.a) + "," + std::to_string(A.b) +
           ";" + std::to_string(A.c) + "," + std::to_string(A.d) + "]";
  bool identity = (A == Mat2i::identity());
  g.vertical_shift_equivariant = identity && f.vertical_shift_equivariant;
  return g;
}

}  // namespace torodyn

#endif  // TORODYN_UNIMODULAR_HPP
