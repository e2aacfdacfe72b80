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

// Turning points: roots of the quartic Q4(z, lambda) in z = sn^2 x, their
// asymptotic regimes, cross ratio and continuation in lambda.

#pragma once

#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ellhill/potential.hpp"
#include "ellhill/series.hpp"

namespace ellhill {

enum class TurningRegime { kNear5, kNear6, kLargeLambda, kIndexOrder };

const char* turning_regime_name(TurningRegime r);

// Numeric saddle data used to anchor the regimes. Missing entries fall
// back to the leading-order saddle formulas.
struct TurningContext {
  std::optional<cplx> z5, z6;
  std::optional<cplx> u5, u6;
  std::optional<cplx> u_anchor;  // u(x_*r) for the large-lambda regime
};

// Numeric context from find_saddles when the couplings allow it.
TurningContext make_turning_context(const PotentialParams& p);

struct TurningPointSet {
  cplx lambda;
  std::array<cplx, 4> roots;  // z1..z4 in the regime's labelling
  TurningRegime regime = TurningRegime::kIndexOrder;
  // (z3,z2,z1,z4) near x*5, (z2,z3,z1,z4) near x*6, (z2,z1,z3,z4) at large
  // lambda, (z1,z2,z3,z4) otherwise.
  cplx cross_ratio;
};

std::array<cplx, 5> q4_coefficients(const PotentialParams& p, cplx lambda);

TurningPointSet find_turning_points(const PotentialParams& p, cplx lambda);
TurningPointSet find_turning_points(const PotentialParams& p, cplx lambda,
                                    const TurningContext& ctx);

cplx cross_ratio(cplx z1, cplx z2, cplx z3, cplx z4);
cplx regime_cross_ratio(TurningRegime r, const std::array<cplx, 4>& z);

// A point of the Riemann sphere; the reciprocal chart w = 1/z is used once
// |z| > 1e6.
struct SpherePoint {
  cplx coord;
  bool reciprocal = false;
  static SpherePoint from(cplx z);
  static SpherePoint infinity() { return {0.0, true}; }
};

enum class SeriesBase {
  kLeadingOrder,  // every coefficient at leading order in k
  kNumericBase,   // delta^0 terms from the exact roots at delta = 0
};

struct TurningSeries {
  TurningRegime regime;
  std::array<SeriesExpansion, 4> z;
  SpherePoint evaluate(int t, cplx small_param) const;
};

// small_param is delta (near5), deltahat (near6) or 1/deltatilde
// (largeLambda). order truncates each expansion to order+1 terms.
TurningSeries turning_series(const PotentialParams& p, TurningRegime regime,
                             cplx small_param, int order,
                             SeriesBase base = SeriesBase::kLeadingOrder,
                             const TurningContext& ctx = {});

// Controls for the eigenvalue path lambda(s).
struct LinearControl {
  cplx delta;  // lambda = u5 + s (u6 - u5) + delta, s in [0, 1]
};
struct ExponentialControl {
  cplx delta;
  double amplitude = 1000.0;
  double rate = 0.05;
  double sigma_max = 0.9;
  // lambda = u5 + delta + amplitude (1 - exp(rate s / (s - 1)))
};
struct SampledControl {
  std::vector<double> sigma;
  std::vector<cplx> lambda;
};
using EigenvalueControl =
    std::variant<LinearControl, ExponentialControl, SampledControl>;

struct TrajectoryRecord {
  std::vector<double> control_samples;
  std::vector<cplx> lambda_path;
  std::array<std::vector<cplx>, 4> root_paths;
  TurningRegime initial_regime = TurningRegime::kIndexOrder;
};

// Samples the control (ignored for SampledControl) into (sigma, lambda).
SampledControl sample_control(const PotentialParams& p,
                              const EigenvalueControl& control, int samples,
                              const TurningContext& ctx);

TrajectoryRecord trace_trajectory(const PotentialParams& p,
                                  const EigenvalueControl& control,
                                  int samples);
TrajectoryRecord trace_trajectory(const PotentialParams& p,
                                  const EigenvalueControl& control,
                                  int samples, const TurningContext& ctx);

}  // namespace ellhill
