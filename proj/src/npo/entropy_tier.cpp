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

#include "dikit/npo/entropy_tier.hpp"

#include <algorithm>
#include <cmath>

#include "dikit/entropy.hpp"
#include "dikit/errors.hpp"
#include "dikit/npo/bounds.hpp"
#include "dikit/npo/quadrature.hpp"

namespace dikit::npo {

namespace {

constexpr std::uint16_t kA = 0, kB = 1, kE = 2;

Word letter(std::uint16_t party, std::uint16_t i) { return Word{inv(party, i)}; }
Word z(std::uint16_t a, bool star) { return Word{free_letter(kE, a, star)}; }

std::vector<MomentCondition> long_range_conditions(const StatisticsTable& t) {
  std::vector<MomentCondition> out;
  for (std::uint16_t x = 0; x < 2; ++x) out.push_back({Polynomial(letter(kA, x)), t.alice_mean(x), "<A" + std::to_string(x) + ">"});
  for (std::uint16_t y = 0; y < 2; ++y) out.push_back({Polynomial(letter(kB, y)), t.bob_mean(y), "<B" + std::to_string(y) + ">"});
  for (std::uint16_t x = 0; x < 2; ++x)
    for (std::uint16_t y = 0; y < 2; ++y)
      out.push_back({Polynomial(letter(kA, x) * letter(kB, y)), t.correlator(x, y),
                     "<A" + std::to_string(x) + " B" + std::to_string(y) + ">"});
  return out;
}

}  // namespace

EntropyTierResult bff_entropy_bound(const StatisticsTable& t, const std::vector<SideCap>& caps, int m_nodes, int level,
                                    const SdpOptions& options) {
  if (m_nodes < 2 || m_nodes > 8) fail(ErrorCode::NodesOutOfRange, "m_nodes must lie in [2, 8]");
  if (!t.is_binary_2x2()) fail(ErrorCode::ShapeError, "long-range table needs (Z, X) binary inputs on both sides");
  t.validate();
  const Quadrature q = gauss_radau(m_nodes);
  const double ln2 = std::log(2.0);

  MomentProblemSpec base;
  base.parties = {{"A", 2, false, true}, {"B", 2, false, true}, {"Z", 2, true, false}};
  base.level = level;
  base.equalities = long_range_conditions(t);
  for (const SideCap& cap : caps) {
    if (!(cap.s_max >= 0.0)) fail(ErrorCode::RangeError, "moment caps must be non-negative");
    if (cap.s_max >= 4.0) continue;  // algebraically implied
    std::uint16_t party = cap.side == Side::A ? kA : kB;
    base.upper_bounds.push_back({anticom_sq_polynomial(party), cap.s_max, cap.side == Side::A ? "cap A" : "cap B"});
  }
  const std::vector<Word> prefixes{Word{}, letter(kA, 0), letter(kA, 1), letter(kB, 0), letter(kB, 1)};
  for (std::uint16_t a = 0; a < 2; ++a)
    for (bool star : {false, true})
      for (const Word& p : prefixes) base.extra_index_words.push_back(p * z(a, star));

  EntropyTierResult out;
  double h = 0.0;
  for (std::size_t i = 0; i + 1 < q.nodes.size(); ++i) {
    const double ti = q.nodes[i];
    MomentProblemSpec spec = base;
    spec.sense = Sense::Min;
    spec.free_letter_norm = 1.5 * std::max(1.0 / ti, 1.0 / (1.0 - ti));
    Polynomial obj;
    for (std::uint16_t a = 0; a < 2; ++a) {
      Polynomial ma = (Polynomial(1.0) + Polynomial(letter(kA, 0), a == 0 ? 1.0 : -1.0)) * 0.5;
      Polynomial za(z(a, false)), zs(z(a, true));
      obj += ma * (za + zs) + (1.0 - ti) * (ma * (zs * za)) + ti * (za * zs);
    }
    spec.objective = obj;
    MomentProblem mp = build_moment_problem(spec);
    SdpSolution s = solve_sdp(mp, options);
    if (s.status == SdpStatus::Infeasible)
      fail(ErrorCode::SolverFailure, "entropy relaxation is infeasible: statistics and caps are inconsistent");
    const double coeff = q.weights[i] / (ti * ln2);
    h += coeff * (1.0 + s.certified_bound);
    out.node_solutions.push_back(std::move(s));
  }
  out.h_a_given_e = h;
  out.quadrature_gap = quadrature_gap(m_nodes);

  // H(Z_A|Z_B) from the observed Z-basis joint distribution.
  std::vector<std::vector<double>> joint(2, std::vector<double>(2));
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b) joint[a][b] = std::max(0.0, t.p(a, b, 0, 0));
  const double h_ab = classical_cond_entropy(joint);
  BB84Errors e = bb84_errors(t);

  RateCertificate& c = out.certificate;
  c.tier = RateTier::NpoEntropy;
  c.rate = devetak_winter(h, h_ab);
  c.q_x = e.q_x;
  c.q_z = e.q_z;
  c.c_star = std::nan("");
  c.inputs = {{"h_a_given_e", h}, {"h_a_given_b", h_ab}, {"m_nodes", m_nodes}, {"level", level},
              {"quadrature_gap", out.quadrature_gap}};
  auto cap_json = nlohmann::json::array();
  for (const SideCap& cap : caps) cap_json.push_back({{"side", cap.side == Side::A ? "A" : "B"}, {"s_max", cap.s_max}});
  c.inputs["caps"] = cap_json;
  auto nodes = nlohmann::json::array();
  for (const auto& s : out.node_solutions) nodes.push_back(s);
  c.residuals = {{"nodes", nodes}};
  return out;
}

}  // namespace dikit::npo
