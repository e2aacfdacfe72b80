// Copyright 2026 The ellhill Authors.
//
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

// Jacobi elliptic functions and complete elliptic integrals for complex
// argument and complex parameter m = k^2 off the cut [1, inf).

#pragma once

#include <array>

#include "ellhill/core.hpp"
#include "ellhill/series.hpp"

namespace ellhill {

struct EllipticModulus {
  cplx m;
  cplx k;        // principal sqrt(m)
  cplx k_prime;  // principal sqrt(1 - m)
  cplx K;
  cplx K_prime;  // K(1 - m); +inf when m == 0

  static EllipticModulus from_m(cplx m);
  // k is normalized to the principal root of k^2.
  static EllipticModulus from_k(cplx k);

  bool has_imaginary_period() const;
};

struct JacobiTriple {
  cplx sn;
  cplx cn;
  cplx dn;
};

cplx complete_K(cplx m);

JacobiTriple jacobi(cplx x, const EllipticModulus& mod);
JacobiTriple jacobi(cplx x, cplx m);

// Lattice coordinates (a, b) with x = a*2K + b*2iK'.
std::array<double, 2> lattice_coordinates(cplx x, const EllipticModulus& mod);

enum class HalfPeriod { kZero, kK, kIKp, kKIKp };

cplx half_period_value(HalfPeriod h, const EllipticModulus& mod);

// Triple at x + shift from the triple at x.
JacobiTriple shifted_identities(const JacobiTriple& at_x,
                                const EllipticModulus& mod, HalfPeriod shift);
JacobiTriple shifted_identities(cplx x, const EllipticModulus& mod,
                                HalfPeriod shift);

struct JacobiTaylor {
  SeriesExpansion sn;
  SeriesExpansion cn;
  SeriesExpansion dn;
};

// Taylor coefficients in the local coordinate about 0, K or K+iK'.
JacobiTaylor taylor_at_halfperiod(HalfPeriod shift, int order,
                                  const EllipticModulus& mod);

// Carlson's symmetric integral R_F for complex arguments off the negative
// real axis (at most one of them zero).
cplx carlson_rf(cplx x, cplx y, cplx z);

// x with sn(x)^2 == z, reduced to the cell [0,1)x[0,1/2] in lattice
// coordinates (the representative of {+x, -x} nearer the real period).
cplx inverse_sn2(cplx z, const EllipticModulus& mod);

// Distance from x to the nearest point of the half-period lattice
// {n K + m iK'}; restricted to classes with active[h] set when given.
double half_lattice_distance(cplx x, const EllipticModulus& mod,
                             const std::array<bool, 4>& active = {true, true,
                                                                  true, true});

}  // namespace ellhill
