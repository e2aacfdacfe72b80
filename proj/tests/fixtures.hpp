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

#include <array>
#include <complex>
#include <random>

#include "ellhill/potential.hpp"

namespace ellhill::testing {

inline std::array<cplx, 4> reference_sqrt_b() {
  auto pol = [](double r, double a) { return std::polar(r, a * kPi / 3.0); };
  return {pol(std::sqrt(6.0), 0.5), pol(3.0, 1.7), pol(std::sqrt(14.0), 4.2),
          pol(std::sqrt(18.0), 5.4)};
}

inline const cplx kFigureK = std::polar(0.2, kPi / 4.0);

inline PotentialParams reference(cplx k) {
  return PotentialParams::from_sqrt_couplings(reference_sqrt_b(), k);
}

inline double rel(cplx a, cplx b) {
  return std::abs(a - b) / std::max(1.0, std::abs(b));
}

inline cplx random_in_disk(std::mt19937_64& rng, double r) {
  std::uniform_real_distribution<double> u(-r, r);
  for (;;) {
    const cplx z(u(rng), u(rng));
    if (std::abs(z) < r) return z;
  }
}

}  // namespace ellhill::testing
