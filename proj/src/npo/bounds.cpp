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

#include "dikit/npo/bounds.hpp"

#include <algorithm>

#include "dikit/errors.hpp"

namespace dikit::npo {

namespace {

Word a(std::uint16_t i, std::uint16_t party = 0) { return Word{inv(party, i)}; }

MomentBound solve_bound(MomentProblemSpec spec, const SdpOptions& options, double lo, double hi) {
  MomentBound out;
  out.problem = build_moment_problem(spec);
  out.solution = solve_sdp(out.problem, options);
  if (out.solution.status == SdpStatus::Infeasible)
    fail(ErrorCode::SolverFailure, "moment relaxation is infeasible: statistics are not quantum realizable");
  out.value = std::clamp(out.solution.certified_bound, lo, hi);
  return out;
}

}  // namespace

std::vector<PartySpec> local_test_parties() { return {{"A", 2, false, true}, {"F", 2, false, true}}; }

Polynomial anticom_sq_polynomial(std::uint16_t party) {
  Polynomial ac = Polynomial(a(0, party) * a(1, party)) + Polynomial(a(1, party) * a(0, party));
  return ac * ac;
}

Polynomial com_sq_polynomial(std::uint16_t party) {
  Polynomial c = Polynomial(a(0, party) * a(1, party)) - Polynomial(a(1, party) * a(0, party));
  return c.adjoint() * c;
}

Polynomial chsh_polynomial() {
  Polynomial p;
  for (std::uint16_t x = 0; x < 2; ++x)
    for (std::uint16_t y = 0; y < 2; ++y) p += Polynomial(a(x) * a(y, 1), (x & y) ? -1.0 : 1.0);
  return p;
}

std::vector<MomentCondition> table_conditions(const StatisticsTable& t, bool full_stats) {
  if (!t.is_binary_2x2()) fail(ErrorCode::ShapeError, "local test tables need two binary inputs per side");
  t.validate();
  std::vector<MomentCondition> out;
  if (!full_stats) {
    out.push_back({chsh_polynomial(), chsh_score(t), "chsh"});
    return out;
  }
  for (std::uint16_t x = 0; x < 2; ++x) out.push_back({Polynomial(a(x)), t.alice_mean(x), "<A" + std::to_string(x) + ">"});
  for (std::uint16_t y = 0; y < 2; ++y)
    out.push_back({Polynomial(a(y, 1)), t.bob_mean(y), "<F" + std::to_string(y) + ">"});
  for (std::uint16_t x = 0; x < 2; ++x)
    for (std::uint16_t y = 0; y < 2; ++y)
      out.push_back({Polynomial(a(x) * a(y, 1)), t.correlator(x, y),
                     "<A" + std::to_string(x) + " F" + std::to_string(y) + ">"});
  return out;
}

MomentBound bound_anticom_sq(const StatisticsTable& t, int level, bool full_stats, const SdpOptions& options) {
  MomentProblemSpec spec;
  spec.parties = local_test_parties();
  spec.level = level;
  spec.equalities = table_conditions(t, full_stats);
  spec.objective = anticom_sq_polynomial();
  spec.sense = Sense::Max;
  return solve_bound(std::move(spec), options, 0.0, 4.0);
}

MomentBound bound_com_sq(const StatisticsTable& t, int level, bool full_stats, const SdpOptions& options) {
  MomentProblemSpec spec;
  spec.parties = local_test_parties();
  spec.level = level;
  spec.equalities = table_conditions(t, full_stats);
  spec.objective = com_sq_polynomial();
  spec.sense = Sense::Min;
  return solve_bound(std::move(spec), options, 0.0, 4.0);
}

MomentBound max_chsh_score(int level, const SdpOptions& options) {
  MomentProblemSpec spec;
  spec.parties = local_test_parties();
  spec.level = level;
  spec.objective = chsh_polynomial();
  spec.sense = Sense::Max;
  return solve_bound(std::move(spec), options, -4.0, 4.0);
}

}  // namespace dikit::npo
