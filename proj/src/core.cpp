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

#include "ellhill/core.hpp"

#include <cmath>

#include "ellhill/series.hpp"

namespace ellhill {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kOk: return "Ok";
    case ErrorCode::kDomain: return "Domain";
    case ErrorCode::kNonConvergence: return "NonConvergence";
    case ErrorCode::kPole: return "Pole";
    case ErrorCode::kDegenerate: return "Degenerate";
    case ErrorCode::kLeadingZero: return "LeadingZero";
    case ErrorCode::kPoleTooClose: return "PoleTooClose";
    case ErrorCode::kZeroCoefficient: return "ZeroCoefficient";
    case ErrorCode::kRegimeViolation: return "RegimeViolation";
    case ErrorCode::kCollisionDetected: return "CollisionDetected";
    case ErrorCode::kBranchAmbiguity: return "BranchAmbiguity";
    case ErrorCode::kSingularity: return "Singularity";
    case ErrorCode::kPathPoleConflict: return "PathPoleConflict";
    case ErrorCode::kNonUnimodular: return "NonUnimodular";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

const char* series_variable_name(SeriesVariable v) {
  switch (v) {
    case SeriesVariable::kK: return "k";
    case SeriesVariable::kK2: return "k2";
    case SeriesVariable::kDelta: return "delta";
    case SeriesVariable::kDeltaHalf: return "delta^1/2";
    case SeriesVariable::kDeltaHat: return "delta_hat";
    case SeriesVariable::kDeltaHatHalf: return "delta_hat^1/2";
    case SeriesVariable::kInvDeltaTilde: return "1/delta_tilde";
    case SeriesVariable::kChi: return "chi";
    case SeriesVariable::kSnChi: return "sn(chi)";
    case SeriesVariable::kCnChiHat: return "cn(chi_hat)";
    case SeriesVariable::kDnChiTilde: return "dn(chi_tilde)";
  }
  return "?";
}

cplx SeriesExpansion::evaluate(cplx t) const {
  cplx acc = 0.0;
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) {
    acc = acc * t + *it;
  }
  if (leading_power != 0) acc *= std::pow(t, leading_power);
  return acc;
}

namespace pseries {

std::vector<cplx> mul(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  const size_t n = std::min(a.size(), b.size());
  std::vector<cplx> c(n, 0.0);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; i + j < n; ++j) c[i + j] += a[i] * b[j];
  }
  return c;
}

std::vector<cplx> div(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  const size_t n = std::min(a.size(), b.size());
  std::vector<cplx> q(n, 0.0);
  for (size_t i = 0; i < n; ++i) {
    cplx r = a[i];
    for (size_t j = 1; j <= i; ++j) r -= b[j] * q[i - j];
    q[i] = r / b[0];
  }
  return q;
}

std::vector<cplx> pow(const std::vector<cplx>& a, int n) {
  std::vector<cplx> r(a.size(), 0.0);
  if (!r.empty()) r[0] = 1.0;
  for (int i = 0; i < n; ++i) r = mul(r, a);
  return r;
}

std::vector<cplx> scale(const std::vector<cplx>& a, cplx s) {
  std::vector<cplx> r(a);
  for (auto& v : r) v *= s;
  return r;
}

}  // namespace pseries

}  // namespace ellhill
