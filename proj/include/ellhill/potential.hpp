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

// The four-coupling elliptic potential
//   u(x) = b0 k^2 sn^2 x + b1 k^2 cn^2 x / dn^2 x + b2 / sn^2 x
//          + b3 dn^2 x / cn^2 x.

#pragma once

#include <array>
#include <vector>

#include "ellhill/elliptic.hpp"

namespace ellhill {

class PotentialParams {
 public:
  static PotentialParams from_couplings(const std::array<cplx, 4>& b, cplx k);
  // The roots are squared and the principal roots re-taken, so both
  // constructors cache the same sqrt_b for the same b.
  static PotentialParams from_sqrt_couplings(const std::array<cplx, 4>& sqrt_b,
                                             cplx k);

  const std::array<cplx, 4>& b() const { return b_; }
  const std::array<cplx, 4>& sqrt_b() const { return sqrt_b_; }
  const EllipticModulus& modulus() const { return mod_; }
  cplx k() const { return mod_.k; }
  cplx m() const { return mod_.m; }

  // max |b_s|; 0 for the free particle.
  double coupling_scale() const;
  bool degenerate_01() const;
  bool degenerate_23() const;
  bool generic() const { return !degenerate_01() && !degenerate_23(); }

  // Singular classes x = 0, K, iK', K+iK' carry b2, b3, b0, b1.
  std::array<bool, 4> active_singularities() const;

 private:
  std::array<cplx, 4> b_{};
  std::array<cplx, 4> sqrt_b_{};
  EllipticModulus mod_{};
};

cplx eval_u(cplx x, const PotentialParams& p);
// Sum of b_s k^2 sn^2 over the four half-period translates of x.
cplx eval_u_shifted(cplx x, const PotentialParams& p);
cplx eval_du(cplx x, const PotentialParams& p);

// u as a rational function of z = sn^2 x.
cplx eval_u_of_z(cplx z, const PotentialParams& p);

// Distance from x to the nearest active singularity.
double singularity_distance(cplx x, const PotentialParams& p);

struct Window {
  cplx lower_left;
  cplx upper_right;
};

struct LandscapeGrid {
  int nx = 0;
  int ny = 0;
  // Row-major with the real coordinate fastest.
  std::vector<cplx> x_samples;
  std::vector<double> magnitude;  // +inf marks a singular cell
  std::vector<double> phase;      // NaN on singular cells
};

LandscapeGrid landscape(const PotentialParams& p, const Window& window, int nx,
                        int ny);

}  // namespace ellhill
