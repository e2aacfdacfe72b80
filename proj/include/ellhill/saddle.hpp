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

// Stationary points of u: the sextic Q6 in z = sn^2 x, its small-k
// solution pairs, Taylor data at each saddle and the re-expansion of u in
// sn/cn/dn monomials.

#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "ellhill/potential.hpp"
#include "ellhill/series.hpp"

namespace ellhill {

enum class SaddleClass {
  kPoleAdjacentKiK,  // indices 1, 2
  kPoleAdjacentK,    // indices 3, 4
  kFlatland,         // indices 5, 6
};

const char* saddle_class_name(SaddleClass c);
SaddleClass saddle_class_of(int index);

struct SaddlePoint {
  int index = 0;  // 1..6
  cplx z_star;
  cplx x_star;
  cplx u_star;
  cplx g2;
  cplx g3;
  SaddleClass cls = SaddleClass::kFlatland;
};

std::array<cplx, 7> q6_coefficients(const PotentialParams& p);

struct SaddleSearch {
  std::vector<SaddlePoint> saddles;  // ordered by index
  bool degenerate = false;
  bool labeled_by_series = false;
  std::vector<std::string> warnings;
};

// Throws Degenerate on merged roots and LeadingZero when b0 k^6 vanishes.
std::vector<SaddlePoint> find_saddles(const PotentialParams& p);
// Same search, reporting merged roots as warnings.
SaddleSearch find_saddles_tolerant(const PotentialParams& p);

// Leading-order sn^2 x_* for indices 1..6 (principal roots of b_s,
// b0-b1, b2-b3). Throws Degenerate for non-generic couplings.
std::array<cplx, 6> saddle_predictions(const PotentialParams& p);

struct SaddleSeriesPoint {
  int index = 0;
  SeriesExpansion z_star;  // in k^2 (pairs 1, 2) or k (pair 3)
  cplx z_leading;
  cplx u_star;
  cplx g2;
  std::optional<cplx> g3;  // empty where the displayed formula is singular
};

std::array<SaddleSeriesPoint, 2> saddle_series(const PotentialParams& p,
                                               int pair);

// Taylor coefficients g_0..g_order of u about s.x_star by a trapezoidal
// Cauchy integral.
SeriesExpansion g_coefficients(const SaddlePoint& s, const PotentialParams& p,
                               int order, double radius = 0.1,
                               int nodes = 64);

struct SteepestDirections {
  double ascent;
  double descent;
};

SteepestDirections steepest_directions(cplx g2);

// Coefficients of u - u_* in the monomials sn^{2m}, sn^{2m+1} cn dn
// (index 5), cn^{2m}, cn^{2m+1} sn dn about K (index 6) or dn^{2m},
// dn^{2m+1} sn cn about K+iK' (indices 1..4). Entry j multiplies the
// monomial of degree j; entries 0 and 1 are zero.
SeriesExpansion local_coefficients(const SaddlePoint& s,
                                   const PotentialParams& p, int order);
SeriesExpansion local_coefficients_from_g(const SaddlePoint& s,
                                          const PotentialParams& p,
                                          const SeriesExpansion& g);
// Inverse of local_coefficients_from_g: g_j implied by the monomial
// coefficients.
std::vector<cplx> g_from_local(const SaddlePoint& s, const PotentialParams& p,
                               const SeriesExpansion& local);

// The quantity whose modulus must stay below 1 for the local re-expansion
// about s to converge at x.
cplx convergence_measure(const SaddlePoint& s, const PotentialParams& p,
                         cplx x);
bool convergence_region(const SaddlePoint& s, const PotentialParams& p,
                        cplx x);

}  // namespace ellhill
