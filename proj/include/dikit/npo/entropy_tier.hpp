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

#ifndef DIKIT_NPO_ENTROPY_TIER_HPP
#define DIKIT_NPO_ENTROPY_TIER_HPP

// Variational quadrature lower bound on H(Z_A|E):
//
//   H(Z_A|E) >= c_m + sum_{i<m} w_i / (t_i ln 2) *
//                inf_Z sum_a <M_a (Z_a + Z_a^* + (1 - t_i) Z_a^* Z_a) + t_i Z_a Z_a^*>
//
// with (t_i, w_i) the Gauss-Radau rule on [0, 1] (t_m = 1) and
// c_m = sum_{i<m} w_i / (t_i ln 2). Each node is relaxed separately, which
// can only lower the bound. Eve's operators Z_a commute with A and B; their
// norm is capped at 3/2 max(1/t, 1/(1-t)), which does not change the
// infimum and keeps every moment bounded for the certificate.

#include <vector>

#include "dikit/analytic_bounds.hpp"
#include "dikit/bell_stats.hpp"
#include "dikit/npo/sdp.hpp"

namespace dikit::npo {

enum class Side { A, B };

struct SideCap {
  Side side = Side::A;
  double s_max = 4.0;  // certified cap on <{X0, X1}^2> for that side
};

struct EntropyTierResult {
  double h_a_given_e = 0.0;  // certified lower bound on H(Z_A|E)
  double quadrature_gap = 0.0;
  RateCertificate certificate;  // rate = h_a_given_e - H(Z_A|Z_B)
  std::vector<SdpSolution> node_solutions;
};

/// Long-range table: inputs (Z, X) on both sides, binary outcomes.
EntropyTierResult bff_entropy_bound(const StatisticsTable& long_range, const std::vector<SideCap>& caps,
                                    int m_nodes = 4, int level = 2, const SdpOptions& options = {});

}  // namespace dikit::npo

#endif  // DIKIT_NPO_ENTROPY_TIER_HPP
