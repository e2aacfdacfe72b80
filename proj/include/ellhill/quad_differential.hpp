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

// The meromorphic quadratic differential
//   phi(z) dz^2 = b0 prod_t (z - z_t) / (4 z^2 (z-1)^2 (z-1/k^2)^2) dz^2
// in z = sn^2 x, its local forms and the lines arg(sqrt(phi) dz) = theta.

#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "ellhill/turning.hpp"

namespace ellhill {

struct QuadDifferential {
  PotentialParams params;
  cplx lambda;
  TurningPointSet turning;
  TurningContext context;
  std::array<SpherePoint, 4> poles;  // 0, 1, 1/k^2, infinity

  static QuadDifferential make(const PotentialParams& p, cplx lambda);
  static QuadDifferential make(const PotentialParams& p, cplx lambda,
                               const TurningContext& ctx);
};

// Pole error within 1e-10 (relative to the pole's size) of 0, 1, 1/k^2.
cplx phi(const QuadDifferential& q, cplx z);
// phi in the chart w = 1/z: phi(1/w) / w^4.
cplx phi_reciprocal(const QuadDifferential& q, cplx w);

enum class LocalSite { kTurning, kPole, kSaddle5, kSaddle6, kCoulomb };

const char* local_site_name(LocalSite s);

struct LocalApprox {
  LocalSite site;
  std::string form;  // linear, inverse-square, harmonic, coulomb
  cplx center;
  bool center_at_infinity = false;
  // linear: {a_t}; inverse-square: {a'_p}; harmonic: {A, B} for
  // A + B (z - z_*)^2; coulomb: {-deltatilde / (4 k^2)}.
  std::vector<cplx> coefficients;

  cplx evaluate(cplx z) const;
};

// index picks the turning point (0..3) or pole (0..3, 3 = infinity).
LocalApprox local_approx(const QuadDifferential& q, LocalSite site,
                         int index = 0);

// Leading-order eigenvalue increment for the site; sign = +1 takes the
// upper of the paired signs.
cplx inferred_dispersion(LocalSite site, cplx mu, const PotentialParams& p,
                         int sign = +1);

enum class FoliationTerminal { kCriticalPoint, kPole, kMaxLength, kDomainExit };

const char* foliation_terminal_name(FoliationTerminal t);

struct FoliationOptions {
  double tolerance = 1e-9;  // per-step error bound of the integrator
  int branch_sign = +1;     // multiplies the principal sqrt(phi(z0))
  double initial_length = 0.0;
  std::optional<Window> domain;  // exit when the line leaves it
  int max_steps = 200000;
};

struct FoliationLine {
  double theta = 0.0;
  std::vector<cplx> points;
  std::vector<double> arc;  // cumulative |dw| at each point
  FoliationTerminal terminal = FoliationTerminal::kMaxLength;
  int terminal_index = -1;  // turning point or pole reached
  double wkb_length = 0.0;
};

FoliationLine trace_foliation(const QuadDifferential& q, cplx z0, double theta,
                              double max_len,
                              const FoliationOptions& opts = {});

// The three points at distance radius from turning point t where the
// theta-lines leave it, with the branch sign and |dw| already covered.
struct LaunchPoint {
  cplx z;
  int branch_sign;
  double initial_length;
};
std::array<LaunchPoint, 3> launch_points(const QuadDifferential& q, int t,
                                         double theta, double radius);

// Integral of sqrt(phi) dz along the straight segment z_a -> z_b, with the
// branch continued from the principal root at the first node. Its phase
// is the theta of a finite critical line joining the two points.
cplx wkb_period(const QuadDifferential& q, int a, int b);

}  // namespace ellhill
