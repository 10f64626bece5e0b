// Copyright 2026 The dikit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dikit/npo/quadrature.hpp"

#include <cmath>
#include <utility>

#include "dikit/errors.hpp"

namespace dikit::npo {

namespace {

// (P_n(x), P_{n-1}(x)) by the three-term recurrence.
std::pair<double, double> legendre(int n, double x) {
  double p0 = 1.0, p1 = x;
  if (n == 0) return {1.0, 0.0};
  for (int k = 2; k <= n; ++k) {
    double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  return {p1, p0};
}

// Radau polynomial for the fixed endpoint +1: its roots are the nodes.
double radau(int m, double x) {
  auto [pm, pm1] = legendre(m, x);
  return pm1 - pm;
}

}  // namespace

Quadrature gauss_radau(int m) {
  if (m < 2 || m > 8) fail(ErrorCode::NodesOutOfRange, "quadrature needs between 2 and 8 nodes");
  // Interior roots on (-1, 1): bracket on a fine grid, then bisect.
  std::vector<double> roots;
  const int grid = 4000;
  double xa = -1.0, fa = radau(m, xa);
  for (int i = 1; i < grid; ++i) {
    double xb = -1.0 + 2.0 * i / grid, fb = radau(m, xb);
    if (fa == 0.0) roots.push_back(xa);
    if (fa * fb < 0.0) {
      double lo = xa, hi = xb, flo = fa;
      for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
        double mid = 0.5 * (lo + hi), fm = radau(m, mid);
        if ((fm < 0.0) == (flo < 0.0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      roots.push_back(0.5 * (lo + hi));
    }
    xa = xb;
    fa = fb;
  }
  if (static_cast<int>(roots.size()) != m - 1) fail(ErrorCode::NoConvergence, "Radau root search failed");

  Quadrature q;
  const double m2 = static_cast<double>(m) * m;
  for (double x : roots) {
    double p = legendre(m - 1, x).first;
    q.nodes.push_back((x + 1.0) / 2.0);
    q.weights.push_back((1.0 + x) / (m2 * p * p) / 2.0);
  }
  q.nodes.push_back(1.0);
  q.weights.push_back(1.0 / m2);
  return q;
}

double quadrature_gap(int m) {
  Quadrature q = gauss_radau(m);
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < q.nodes.size(); ++i) s += q.weights[i] / (std::log(2.0) * (1.0 + q.nodes[i]));
  return 1.0 - s;
}

}  // namespace dikit::npo
