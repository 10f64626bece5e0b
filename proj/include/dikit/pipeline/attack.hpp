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

#ifndef DIKIT_PIPELINE_ATTACK_HPP
#define DIKIT_PIPELINE_ATTACK_HPP

// Explicit-attack ceilings. Every model here reproduces the Werner BB84
// long-range statistics at the given QBER exactly, so the best key rate any
// certificate may claim is at most the smallest H(Z_A|E) - H(Z_A|Z_B) found.
//
// Family: with probability p a classical block (uniform, perfectly
// correlated Z and X bits, commuting observables, Eve holds a copy of the Z
// bit); otherwise one of two mirrored Bell-diagonal qubit blocks with
// correlation matrix diag(v', c, v'), v' = 1 - 2q/(1-p), and Alice's X
// observable at angle +-theta from Z. Eve holds the block flag and the
// purification of each block.
//
// Local-test consistency is imposed through the side quantities a
// certificate actually uses: <{A0,A1}^2> must not exceed the certified cap,
// and the block mixture must still reach the observed local CHSH score.

#include <vector>

#include <json.hpp>

namespace dikit {

struct AttackConstraints {
  double cap_a = 4.0;
  double cap_b = 4.0;
  double score_a = 0.0;  // observed local CHSH score, Alice side
  double score_b = 0.0;
};

struct AttackModel {
  double p = 0.0;      // classical weight
  double c = 0.0;      // <YY> of the qubit blocks
  double theta = 0.0;  // radians
  double h_a_given_e = 0.0;
  double rate = 0.0;
};

struct AttackCeiling {
  double one_switch = 0.0;  // only Alice's side constrained
  double two_switch = 0.0;  // both sides constrained
  AttackModel one_switch_model;
  AttackModel two_switch_model;
  std::size_t models_checked = 0;
};

void to_json(nlohmann::json& j, const AttackModel& m);
void to_json(nlohmann::json& j, const AttackCeiling& c);

/// H(Z_A|E) for the Bell-diagonal state with correlations diag(t, c, t),
/// evaluated by purification and a Z measurement on A.
double bell_diagonal_key_entropy(double t, double c);

AttackCeiling attack_ceilings(double qber, const AttackConstraints& constraints);

/// Convenience form: caps and scores derived from Werner local tests.
/// One visibility constrains Alice only; two constrain both sides.
double attack_oracle(double qber, const std::vector<double>& local_visibilities, int level = 2);

}  // namespace dikit

#endif  // DIKIT_PIPELINE_ATTACK_HPP
