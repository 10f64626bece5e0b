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

#ifndef DIKIT_NPO_BOUNDS_HPP
#define DIKIT_NPO_BOUNDS_HPP

// Certified moment bounds for a two-party local test. Party "A" holds the
// key-side observables A0 (Z) and A1 (X); party "F" is the local tester.

#include <vector>

#include "dikit/bell_stats.hpp"
#include "dikit/npo/moment_problem.hpp"
#include "dikit/npo/sdp.hpp"

namespace dikit::npo {

inline constexpr int kDefaultLevel = 2;

struct MomentBound {
  double value = 0.0;  // certified, clamped to the algebraic range [0, 4]
  SdpSolution solution;
  MomentProblem problem;
};

std::vector<PartySpec> local_test_parties();

/// <{A0,A1}^2> and <[A0,A1]^dagger [A0,A1]> as polynomials in party 0.
Polynomial anticom_sq_polynomial(std::uint16_t party = 0);
Polynomial com_sq_polynomial(std::uint16_t party = 0);

/// CHSH operator sum_xy (-1)^{xy} A_x F_y.
Polynomial chsh_polynomial();

/// Equalities pinning <A_x>, <F_y>, <A_x F_y> (full) or only the CHSH score.
std::vector<MomentCondition> table_conditions(const StatisticsTable& t, bool full_stats);

/// Upper bound on <{A0,A1}^2> over all models reproducing the table.
/// Throws SolverFailure when the statistics are not quantum realizable.
MomentBound bound_anticom_sq(const StatisticsTable& t, int level = kDefaultLevel, bool full_stats = true,
                             const SdpOptions& options = {});

/// Lower bound on <[A0,A1]^dagger [A0,A1]>.
MomentBound bound_com_sq(const StatisticsTable& t, int level = kDefaultLevel, bool full_stats = true,
                         const SdpOptions& options = {});

/// Unconstrained maximum of the CHSH score at the given level.
MomentBound max_chsh_score(int level = 1, const SdpOptions& options = {});

}  // namespace dikit::npo

#endif  // DIKIT_NPO_BOUNDS_HPP
