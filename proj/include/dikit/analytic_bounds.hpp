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

#ifndef DIKIT_ANALYTIC_BOUNDS_HPP
#define DIKIT_ANALYTIC_BOUNDS_HPP

// Closed-form certification chains.
//
// Anticommutator route (qubit observables A, B at Bloch angle theta):
//   ||{A,B}|| = 2|cos theta|,  c = (1 + |cos theta|)/2,
//   r >= -log2 c - h(Q) = 1 - log2(1 + ||{A,B}||/2) - h(Q).
//
// Self-testing route: a CHSH deficit eps gives a delta = C sqrt(eps)
// dilation, c_A* <= 1/4 + 8 delta, c* <= 2 c_A*, and with the uncertainty
// relation H(Z_A|E) + H(X_A|B) >= -log2 c* plus Fano,
//   r >= -1 - log2 c_A* - h(Q_X) - h(Q_Z).
//
// Moment route: a certified cap s >= <{A_Z, A_X}^2> bounds the effective
// overlap. In a block decomposition where both measurements act as qubit
// projectors at angle theta_k with weight p_k,
//   c* = sum_k p_k (1 + |cos theta_k|)/2 = 1/2 + (1/2) sum_k p_k |cos theta_k|
//   <{A,B}^2> = 4 sum_k p_k cos^2 theta_k,
// and Cauchy-Schwarz (sum p_k |cos|)^2 <= sum p_k cos^2 gives
//   c* <= 1/2 + sqrt(s)/4.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace dikit {

enum class RateTier { AnalyticProp2, AnalyticThm1, NpoEur, NpoEntropy };

std::string_view tier_name(RateTier tier);
RateTier parse_tier(std::string_view name);

struct SelfTestParams {
  double epsilon = 0.0;
  double delta_constant = 1.0;

  /// delta = C sqrt(eps). Throws RangeError for eps < 0 or C <= 0.
  double delta() const;
  void validate() const;
};

struct OverlapBound {
  std::optional<double> c_A_star;
  double c_star = 1.0;
};

struct JordanBlocks {
  std::vector<double> weights;
  std::vector<double> angles;
};

struct JordanMoments {
  double c_star = 0.0;
  double anticom_sq_moment = 0.0;
  double com_sq_moment = 0.0;
};

struct RateCertificate {
  double rate = 0.0;
  RateTier tier = RateTier::AnalyticProp2;
  double epsilon = 0.0;
  double delta_constant = 0.0;
  double c_star = 1.0;
  double q_x = 0.0;
  double q_z = 0.0;
  bool vacuous = false;
  nlohmann::json inputs = nlohmann::json::object();
  nlohmann::json residuals = nlohmann::json::object();
};

void to_json(nlohmann::json& j, const RateCertificate& c);

/// c = (1 + norm/2)/2 for norm = ||{A,B}|| in [0, 2].
double overlap_from_anticommutator_norm(double norm);

RateCertificate prop2_rate(double norm, double qber);

/// c* = 1/2 + sqrt(s)/4 for a certified cap s on <{A,B}^2>, s in [0, 4].
double overlap_from_moment_bound(double s);

/// -log2 c* - h(q_x) - h(q_z).
RateCertificate eur_rate(double c_star, double q_x, double q_z);

/// Self-testing chain with c_A* = min(1, 1/4 + 8 delta). Marked vacuous when
/// the clamp is active.
RateCertificate thm1_rate(const SelfTestParams& params, double q_x, double q_z);

/// Exact c* and moments for an explicit block structure.
JordanMoments jordan_overlap_oracle(const JordanBlocks& blocks);

}  // namespace dikit

#endif  // DIKIT_ANALYTIC_BOUNDS_HPP
