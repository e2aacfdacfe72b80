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

#include "ellhill/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ellhill {
namespace {

constexpr double kSingularTol = 1e-10;

using Couplings = std::array<cplx, 4>;

cplx u_terms(const Couplings& b, const JacobiTriple& t, cplx m) {
  cplx u = 0.0;
  if (b[0] != 0.0) u += b[0] * m * t.sn * t.sn;
  if (b[1] != 0.0) u += b[1] * m * (t.cn * t.cn) / (t.dn * t.dn);
  if (b[2] != 0.0) u += b[2] / (t.sn * t.sn);
  if (b[3] != 0.0) u += b[3] * (t.dn * t.dn) / (t.cn * t.cn);
  return u;
}

cplx du_terms(const Couplings& b, const JacobiTriple& t, cplx m, cplx kp2) {
  const cplx s = t.sn, c = t.cn, d = t.dn;
  cplx du = 0.0;
  if (b[0] != 0.0) du += 2.0 * b[0] * m * s * c * d;
  if (b[1] != 0.0) du -= 2.0 * b[1] * m * kp2 * s * c / (d * d * d);
  if (b[2] != 0.0) du -= 2.0 * b[2] * c * d / (s * s * s);
  if (b[3] != 0.0) du += 2.0 * b[3] * kp2 * s * d / (c * c * c);
  return du;
}

// u(x) in terms of the triple at x - iK' is the same expression with
// (b0, b1, b2, b3) -> (b2, b3, b0, b1). That form is used in the half of
// the cell nearer the iK' line, where sn itself is large.
struct Representation {
  Couplings b;
  JacobiTriple t;
};

Representation represent(cplx x, const PotentialParams& p) {
  const auto& mod = p.modulus();
  const Couplings& b = p.b();
  if (mod.has_imaginary_period()) {
    const auto ab = lattice_coordinates(x, mod);
    const double frac = ab[1] - std::round(ab[1]);
    if (std::abs(frac) > 0.25) {
      return {{b[2], b[3], b[0], b[1]}, jacobi(x - kI * mod.K_prime, mod)};
    }
  }
  return {b, jacobi(x, mod)};
}

void check_singular(cplx x, const PotentialParams& p, const char* who) {
  if (singularity_distance(x, p) < kSingularTol) {
    fail(ErrorCode::kPole, std::string(who) + ": x at a singularity of u");
  }
}

}  // namespace

PotentialParams PotentialParams::from_couplings(const std::array<cplx, 4>& b,
                                                cplx k) {
  PotentialParams p;
  p.b_ = b;
  for (int s = 0; s < 4; ++s) p.sqrt_b_[s] = std::sqrt(b[s]);
  p.mod_ = EllipticModulus::from_k(k);
  return p;
}

PotentialParams PotentialParams::from_sqrt_couplings(
    const std::array<cplx, 4>& sqrt_b, cplx k) {
  std::array<cplx, 4> b;
  for (int s = 0; s < 4; ++s) b[s] = sqrt_b[s] * sqrt_b[s];
  return from_couplings(b, k);
}

double PotentialParams::coupling_scale() const {
  double s = 0.0;
  for (const cplx& v : b_) s = std::max(s, std::abs(v));
  return s;
}

bool PotentialParams::degenerate_01() const {
  return std::abs(b_[0] - b_[1]) < 1e-6 * coupling_scale() ||
         coupling_scale() == 0.0;
}

bool PotentialParams::degenerate_23() const {
  return std::abs(b_[2] - b_[3]) < 1e-6 * coupling_scale() ||
         coupling_scale() == 0.0;
}

std::array<bool, 4> PotentialParams::active_singularities() const {
  return {b_[2] != 0.0, b_[3] != 0.0, b_[0] != 0.0, b_[1] != 0.0};
}

double singularity_distance(cplx x, const PotentialParams& p) {
  const auto act = p.active_singularities();
  if (!(act[0] || act[1] || act[2] || act[3])) {
    return std::numeric_limits<double>::infinity();
  }
  return half_lattice_distance(x, p.modulus(), act);
}

cplx eval_u(cplx x, const PotentialParams& p) {
  check_singular(x, p, "eval_u");
  const Representation r = represent(x, p);
  return u_terms(r.b, r.t, p.m());
}

cplx eval_du(cplx x, const PotentialParams& p) {
  check_singular(x, p, "eval_du");
  const Representation r = represent(x, p);
  const cplx kp = p.modulus().k_prime;
  return du_terms(r.b, r.t, p.m(), kp * kp);
}

cplx eval_u_shifted(cplx x, const PotentialParams& p) {
  check_singular(x, p, "eval_u_shifted");
  const auto& mod = p.modulus();
  const auto& b = p.b();
  if (!mod.has_imaginary_period() && (b[2] != 0.0 || b[3] != 0.0)) {
    fail(ErrorCode::kDomain, "eval_u_shifted: iK' undefined at m = 0");
  }
  const HalfPeriod shifts[4] = {HalfPeriod::kZero, HalfPeriod::kK,
                                HalfPeriod::kIKp, HalfPeriod::kKIKp};
  cplx u = 0.0;
  for (int s = 0; s < 4; ++s) {
    if (b[s] == 0.0) continue;
    const cplx sn = jacobi(x + half_period_value(shifts[s], mod), mod).sn;
    u += b[s] * mod.m * sn * sn;
  }
  return u;
}

cplx eval_u_of_z(cplx z, const PotentialParams& p) {
  const auto& b = p.b();
  const cplx m = p.m();
  cplx u = 0.0;
  if (b[0] != 0.0) u += b[0] * m * z;
  if (b[1] != 0.0) u += b[1] * m * (1.0 - z) / (1.0 - m * z);
  if (b[2] != 0.0) u += b[2] / z;
  if (b[3] != 0.0) u += b[3] * (1.0 - m * z) / (1.0 - z);
  return u;
}

LandscapeGrid landscape(const PotentialParams& p, const Window& window, int nx,
                        int ny) {
  if (nx < 1 || ny < 1) {
    fail(ErrorCode::kInvalidArgument, "landscape: nx, ny must be positive");
  }
  LandscapeGrid g;
  g.nx = nx;
  g.ny = ny;
  const size_t n = static_cast<size_t>(nx) * static_cast<size_t>(ny);
  g.x_samples.reserve(n);
  g.magnitude.reserve(n);
  g.phase.reserve(n);
  const cplx d = window.upper_right - window.lower_left;
  const double sx = nx > 1 ? d.real() / (nx - 1) : 0.0;
  const double sy = ny > 1 ? d.imag() / (ny - 1) : 0.0;
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const cplx x = window.lower_left + cplx(i * sx, j * sy);
      double mag = std::numeric_limits<double>::infinity();
      double ph = std::numeric_limits<double>::quiet_NaN();
      try {
        const cplx u = eval_u(x, p);
        if (std::isfinite(std::abs(u))) {
          mag = std::abs(u);
          ph = std::arg(u);
        }
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kPole) throw;
      }
      g.x_samples.push_back(x);
      g.magnitude.push_back(mag);
      g.phase.push_back(ph);
    }
  }
  return g;
}

}  // namespace ellhill
