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

#pragma once

#include <functional>
#include <vector>

#include "ellhill/core.hpp"

namespace ellhill::poly {

// Coefficient vectors are ordered highest degree first.
cplx eval(const std::vector<cplx>& c, cplx z);
cplx eval_derivative(const std::vector<cplx>& c, cplx z);
// sum |c_i| |z|^i, the natural size against which a residual is judged.
double eval_scale(const std::vector<cplx>& c, cplx z);

// Companion-matrix eigenvalues followed by Newton polishing (at least
// two steps, more while the residual keeps falling). c[0] must be nonzero.
std::vector<cplx> roots(const std::vector<cplx>& c);

// Smallest pairwise |z_i - z_j| / max(1, |z_i|, |z_j|).
double min_relative_separation(const std::vector<cplx>& z);

// Permutation p minimizing sum_i cost(i, p[i]) over all n! pairings
// (n <= 8).
std::vector<int> best_assignment(int n,
                                 const std::function<double(int, int)>& cost);

// Distance on the Riemann sphere.
double chordal_distance(cplx a, cplx b);

}  // namespace ellhill::poly
