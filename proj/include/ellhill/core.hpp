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

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ellhill {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr cplx kI{0.0, 1.0};

// Numeric values are part of the C ABI (see ellhill.h); append only.
enum class ErrorCode : int {
  kOk = 0,
  kDomain = 1,
  kNonConvergence = 2,
  kPole = 3,
  kDegenerate = 4,
  kLeadingZero = 5,
  kPoleTooClose = 6,
  kZeroCoefficient = 7,
  kRegimeViolation = 8,
  kCollisionDetected = 9,
  kBranchAmbiguity = 10,
  kSingularity = 11,
  kPathPoleConflict = 12,
  kNonUnimodular = 13,
  kInvalidArgument = 14,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& what);

}  // namespace ellhill
