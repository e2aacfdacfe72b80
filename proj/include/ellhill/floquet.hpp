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

// Floquet indices of psi'' + (lambda - u) psi = 0 for the three periods:
// asymptotic series (A about x*5 over 2iK', B about x*6 over 2K+2iK',
// C at large lambda over 2K) and a direct monodromy oracle.
//
// Multiplier conventions. With rho = exp(i mu C_T) taken literally, the
// index relations of cases A and B would force rho+ rho- = -1, while the
// Wronskian forces det M = 1. The half-integer offset of the index is
// therefore carried in the multiplier:
//   A: rho = exp(i pi (i mu + 1/2)),      i mu known mod 2
//   B: rho = exp(i pi (mu / k' + 1/2)),   mu known mod 2k'
//   C: rho = exp(2 i K mu),               mu known mod pi / K

#pragma once

#include <array>
#include <optional>
#include <vector>

#include "ellhill/potential.hpp"

namespace ellhill {

enum class FloquetCase { kA, kB, kC };
enum class PeriodTag { k2K, k2iKp, k2K2iKp };

const char* floquet_case_name(FloquetCase c);
const char* period_tag_name(PeriodTag t);
PeriodTag period_of(FloquetCase c);
FloquetCase case_of(PeriodTag t);
cplx period_value(PeriodTag t, const EllipticModulus& mod);

// C_T: i pi (A), pi / k' (B), 2K (C).
cplx canonical_period(FloquetCase c, const EllipticModulus& mod);

// Principal-branch f(x): ln((dn - cn) / (k' sn)) (A),
// (i/k') ln((dn + k' sn) / cn) (B), x (C). Singularity error at the
// logarithmic branch points (sn = 0 for A, cn = 0 for B).
cplx canonical_coordinate(FloquetCase c, cplx x, const EllipticModulus& mod);

// f(x0 + T) - f(x0) with f continued along the straight path, detoured
// around branch points within the clearance.
cplx canonical_shift(FloquetCase c, cplx x0, const EllipticModulus& mod);

// Numeric data of the local expansions about x*5 and x*6.
struct SpectralContext {
  bool has_saddles = false;
  cplx x5, x6, z5, z6;
  cplx u5, u6;
  cplx lambda2;      // coefficient of sn^2 chi, chi = x - x*5
  cplx lambda2_hat;  // coefficient of cn^2 chihat, chihat = x - x*6 + K
  std::optional<cplx> c0;  // case C, after calibrate_c0
};

// Saddle data where the couplings are generic; has_saddles stays false
// otherwise. c0 is exactly zero for the free particle.
SpectralContext make_spectral_context(const PotentialParams& p);

enum class RegimePolicy { kEnforce, kIgnore };

// Local WKB integrand truncated to its first order+1 displayed terms
// (order <= 2). arg is chi (A), chihat (B) or x (C); increment is delta,
// deltahat or lambda respectively. sign = +1 selects v+.
cplx wkb_integrand(FloquetCase c, cplx arg, cplx increment,
                   const PotentialParams& p, int order,
                   const SpectralContext& ctx, int sign = +1);

// Returns delta (A), deltahat (B) or lambda (C) for the index mu. order 1
// keeps the leading term, order 2 the displayed two terms. sign = +1 is
// the upper sign.
cplx eigenvalue_series(FloquetCase c, cplx mu, const PotentialParams& p,
                       int order, const SpectralContext& ctx,
                       RegimePolicy policy = RegimePolicy::kEnforce,
                       int sign = +1);

// Raw two-term series in the local data, used by the duality check.
cplx series_case_a(cplx mu, cplx m, cplx sqrt_lambda2, int sign = +1);
cplx series_case_b(cplx mu, cplx m, cplx k_prime, cplx sqrt_lambda2_hat,
                   int sign = +1);

// Index implied by an eigenvalue increment: inverse of the two-term
// series, on the root nearer the leading-order inverse.
cplx invert_eigenvalue_series(FloquetCase c, cplx increment,
                              const PotentialParams& p,
                              const SpectralContext& ctx, int sign = +1);

struct DualityData {
  cplx k;
  cplx k_prime;
  cplx sqrt_lambda2;
  cplx mu;
  cplx delta;
};

// Case-A data to case-B data: k -> -i k / k', k' -> 1 / k',
// sqrt(lambda2) -> sqrt(lambda2) / k', mu -> (-i mu - 1) / k',
// delta -> delta / k'^2.
DualityData duality_transform(const DualityData& a);

struct MonodromyOptions {
  double rtol = 1e-10;
  double atol = 1e-12;
  std::optional<cplx> mu_seed;  // overrides the series seed
  bool check_winding = true;    // case A contour must enclose z*5 only
};

struct MonodromyResult {
  PeriodTag period_tag = PeriodTag::k2K;
  FloquetCase case_tag = FloquetCase::kC;
  cplx C_T;
  std::array<cplx, 4> matrix;  // row-major [psi1 psi2; psi1' psi2']
  cplx det;                    // product of per-segment determinants
  cplx rho_plus, rho_minus;
  cplx mu_plus, mu_minus;
  bool seeded = false;  // false: principal branch, mu known mod lattice
  cplx base_point;
  std::vector<cplx> path;
};

// Base point whose straight period path clears the poles and, for case A,
// passes beside x*5 so that the image contour encloses z*5 only.
cplx default_base_point(const PotentialParams& p, PeriodTag tag,
                        const SpectralContext& ctx);

// The polyline monodromy integrates along: base -> base + T with detours
// around the singular points of u (and of f for cases A, B).
std::vector<cplx> period_path(const PotentialParams& p, PeriodTag tag,
                              cplx base_point);

MonodromyResult monodromy(const PotentialParams& p, cplx lambda,
                          PeriodTag tag, cplx base_point,
                          const SpectralContext& ctx,
                          const MonodromyOptions& opts = {});

// Index lattice 2 pi / C_T: -2i (A, i.e. i mu mod 2), 2k' (B), pi / K (C).
cplx index_lattice(FloquetCase c, const EllipticModulus& mod);

// mu from a multiplier, translated by the lattice to the value nearest
// the seed (principal branch when no seed is given).
cplx mu_from_multiplier(FloquetCase c, cplx rho, const EllipticModulus& mod,
                        std::optional<cplx> seed = std::nullopt);

bool index_relation_check(FloquetCase c, cplx mu_plus, cplx mu_minus,
                          const PotentialParams& p, double tol = 1e-6);

// c0 = lambda_ref - mu^2 with mu from the 2K monodromy at lambda_ref.
cplx calibrate_c0(const PotentialParams& p, const SpectralContext& ctx,
                  double lambda_ref = 1e4);

}  // namespace ellhill
