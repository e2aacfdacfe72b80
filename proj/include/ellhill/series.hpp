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

#include <string>
#include <vector>

#include "ellhill/core.hpp"

namespace ellhill {

// Expansion variable of a SeriesExpansion.
enum class SeriesVariable {
  kK,            // modulus k
  kK2,           // k^2
  kDelta,        // lambda - u(x*5)
  kDeltaHalf,    // delta^{1/2}
  kDeltaHat,     // lambda - u(x*6)
  kDeltaHatHalf, // deltahat^{1/2}
  kInvDeltaTilde,
  kChi,          // x - x*
  kSnChi,
  kCnChiHat,
  kDnChiTilde,
};

const char* series_variable_name(SeriesVariable v);

// Truncated expansion sum_{j} c_j t^{leading_power + j}.
struct SeriesExpansion {
  std::string family;
  SeriesVariable variable = SeriesVariable::kChi;
  int leading_power = 0;
  std::vector<cplx> coefficients;

  int truncation_order() const {
    return static_cast<int>(coefficients.size()) - 1;
  }
  cplx evaluate(cplx t) const;
};

// Dense truncated power series arithmetic in one variable; all operands
// share the caller's truncation length.
namespace pseries {

std::vector<cplx> mul(const std::vector<cplx>& a, const std::vector<cplx>& b);
// Requires b[0] != 0.
std::vector<cplx> div(const std::vector<cplx>& a, const std::vector<cplx>& b);
std::vector<cplx> pow(const std::vector<cplx>& a, int n);
std::vector<cplx> scale(const std::vector<cplx>& a, cplx s);

}  // namespace pseries

}  // namespace ellhill
