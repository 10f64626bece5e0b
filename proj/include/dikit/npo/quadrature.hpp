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

#ifndef DIKIT_NPO_QUADRATURE_HPP
#define DIKIT_NPO_QUADRATURE_HPP

#include <vector>

namespace dikit::npo {

struct Quadrature {
  std::vector<double> nodes;    // ascending in (0, 1]; the last node is 1
  std::vector<double> weights;  // positive, summing to 1
};

/// m-point Gauss-Radau rule on [0, 1] with the endpoint t = 1 fixed.
/// Exact for polynomials of degree <= 2m - 2. Throws NodesOutOfRange
/// unless 2 <= m <= 8.
Quadrature gauss_radau(int m);

/// Deficit of the variational entropy bound on an ideal key bit: the bound
/// evaluates to 1 - quadrature_gap(m) when Eve is decoupled.
double quadrature_gap(int m);

}  // namespace dikit::npo

#endif  // DIKIT_NPO_QUADRATURE_HPP
