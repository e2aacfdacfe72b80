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

#include "ellhill/polynomial.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace ellhill::poly {

cplx eval(const std::vector<cplx>& c, cplx z) {
  cplx acc = 0.0;
  for (const cplx& v : c) acc = acc * z + v;
  return acc;
}

cplx eval_derivative(const std::vector<cplx>& c, cplx z) {
  const size_t n = c.size();
  cplx acc = 0.0;
  for (size_t i = 0; i + 1 < n; ++i) {
    acc = acc * z + c[i] * static_cast<double>(n - 1 - i);
  }
  return acc;
}

double eval_scale(const std::vector<cplx>& c, cplx z) {
  const double r = std::abs(z);
  double acc = 0.0;
  for (const cplx& v : c) acc = acc * r + std::abs(v);
  return acc;
}

std::vector<cplx> roots(const std::vector<cplx>& c) {
  const int n = static_cast<int>(c.size()) - 1;
  if (n < 1) return {};
  if (c[0] == 0.0) fail(ErrorCode::kLeadingZero, "roots: leading coefficient 0");
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(n, n);
  for (int j = 0; j < n; ++j) comp(0, j) = -c[j + 1] / c[0];
  for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
  if (es.info() != Eigen::Success) {
    fail(ErrorCode::kNonConvergence, "roots: companion eigenproblem failed");
  }
  std::vector<cplx> z(n);
  for (int i = 0; i < n; ++i) z[i] = es.eigenvalues()[i];
  for (cplx& r : z) {
    double res = std::abs(eval(c, r));
    for (int it = 0; it < 8; ++it) {
      const cplx d = eval_derivative(c, r);
      if (d == 0.0) break;
      const cplx cand = r - eval(c, r) / d;
      const double cres = std::abs(eval(c, cand));
      if (!std::isfinite(cres)) break;
      if (it >= 2 && !(cres < res)) break;
      r = cand;
      res = cres;
      if (res == 0.0) break;
    }
  }
  return z;
}

double min_relative_separation(const std::vector<cplx>& z) {
  double best = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < z.size(); ++i) {
    for (size_t j = i + 1; j < z.size(); ++j) {
      const double s = std::max({1.0, std::abs(z[i]), std::abs(z[j])});
      best = std::min(best, std::abs(z[i] - z[j]) / s);
    }
  }
  return best;
}

std::vector<int> best_assignment(int n,
                                 const std::function<double(int, int)>& cost) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<int> best = p;
  double best_cost = std::numeric_limits<double>::infinity();
  do {
    double s = 0.0;
    for (int i = 0; i < n && s < best_cost; ++i) s += cost(i, p[i]);
    if (s < best_cost) {
      best_cost = s;
      best = p;
    }
  } while (std::next_permutation(p.begin(), p.end()));
  return best;
}

double chordal_distance(cplx a, cplx b) {
  const bool ia = !std::isfinite(std::abs(a));
  const bool ib = !std::isfinite(std::abs(b));
  if (ia && ib) return 0.0;
  if (ia) return 1.0 / std::sqrt(1.0 + std::norm(b));
  if (ib) return 1.0 / std::sqrt(1.0 + std::norm(a));
  return std::abs(a - b) /
         std::sqrt((1.0 + std::norm(a)) * (1.0 + std::norm(b)));
}

}  // namespace ellhill::poly
