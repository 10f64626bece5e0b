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

#include "dikit/pipeline/attack.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "dikit/bell_stats.hpp"
#include "dikit/entropy.hpp"
#include "dikit/errors.hpp"
#include "dikit/npo/bounds.hpp"
#include "dikit/quantum_model.hpp"

namespace dikit {

namespace {

constexpr int kAngleSteps = 180;  // 1 degree
constexpr int kWeightSteps = 200;
constexpr int kCorrSteps = 80;
constexpr double kSlack = 1e-12;

// Weights on Phi+, Phi-, Psi+, Psi- for correlations diag(t, c, t); the
// boundary of the c range sits exactly on a zero weight, hence the clamp.
ComplexMatrix bell_diagonal(double t, double c) {
  const double w[4] = {(1 + 2 * t - c) / 4, (1 + c) / 4, (1 + c) / 4, (1 - 2 * t - c) / 4};
  const double r = std::numbers::sqrt2 / 2;
  const double vecs[4][4] = {{r, 0, 0, r}, {r, 0, 0, -r}, {0, r, r, 0}, {0, r, -r, 0}};
  for (double x : w)
    if (x < -1e-12) fail(ErrorCode::RangeError, "correlations diag(t, c, t) do not describe a state");
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  for (int k = 0; k < 4; ++k) {
    ComplexVector v(4);
    for (int i = 0; i < 4; ++i) v(i) = vecs[k][i];
    m += std::max(0.0, w[k]) * v * v.adjoint();
  }
  return m / m.trace().real();
}

struct Feasibility {
  bool ok = false;
  double theta = 0.0;
};

// Cheapest angle that keeps both the cap and the local score satisfiable.
Feasibility feasible_angle(double p, double cap, double score) {
  for (int k = 0; k <= kAngleSteps; ++k) {
    const double th = std::numbers::pi * k / kAngleSteps;
    const double cs = std::cos(th), sn = std::abs(std::sin(th));
    const double anticom = 4.0 * p + (1.0 - p) * 4.0 * cs * cs;
    const double chsh = 2.0 * p + (1.0 - p) * 2.0 * std::sqrt(1.0 + sn);
    if (anticom <= cap + kSlack && chsh >= score - kSlack) return {true, th};
  }
  return {};
}

}  // namespace

void to_json(nlohmann::json& j, const AttackModel& m) {
  j = {{"p", m.p}, {"c", m.c}, {"theta", m.theta}, {"h_a_given_e", m.h_a_given_e}, {"rate", m.rate}};
}

void to_json(nlohmann::json& j, const AttackCeiling& c) {
  j = {{"one_switch", c.one_switch},
       {"two_switch", c.two_switch},
       {"one_switch_model", c.one_switch_model},
       {"two_switch_model", c.two_switch_model},
       {"models_checked", c.models_checked}};
}

double bell_diagonal_key_entropy(double t, double c) {
  DensityMatrix rho(FactorSpace({2, 2}), bell_diagonal(t, c));
  Purification pur = purify(rho, 4);
  const std::size_t cond[] = {2};
  return measured_cond_entropy(pur.psi, pur.space, 0, bloch_pvm(DichotomicObservable({0.0, 0.0, 1.0}), "Z"), cond);
}

AttackCeiling attack_ceilings(double qber, const AttackConstraints& k) {
  if (!(qber >= 0.0 && qber <= 0.5)) fail(ErrorCode::RangeError, "qber must lie in [0, 1/2]");
  const double hq = binary_entropy(qber);
  AttackCeiling out;
  out.one_switch = out.two_switch = std::numeric_limits<double>::infinity();

  for (int i = 0; i <= kWeightSteps; ++i) {
    const double p = (1.0 - qber) * i / kWeightSteps;
    Feasibility fa = feasible_angle(p, k.cap_a, k.score_a);
    if (!fa.ok) continue;
    Feasibility fb = feasible_angle(p, k.cap_b, k.score_b);
    const double t = 1.0 - 2.0 * qber / (1.0 - p);
    if (!(1.0 - p > 0.0) || t < -1.0 - kSlack) continue;
    // c in [-1, 1 - 2|t|] keeps the block positive
    const double c_hi = std::max(-1.0, 1.0 - 2.0 * std::abs(t));
    for (int j = 0; j <= kCorrSteps; ++j) {
      const double c = -1.0 + (c_hi + 1.0) * j / kCorrSteps;
      AttackModel m;
      m.p = p;
      m.c = c;
      m.theta = fa.theta;
      m.h_a_given_e = (1.0 - p) * bell_diagonal_key_entropy(t, c);
      m.rate = m.h_a_given_e - hq;
      ++out.models_checked;
      if (m.rate < out.one_switch) {
        out.one_switch = m.rate;
        out.one_switch_model = m;
      }
      if (fb.ok && m.rate < out.two_switch) {
        m.theta = std::max(fa.theta, fb.theta);
        out.two_switch = m.rate;
        out.two_switch_model = m;
      }
      if (c_hi <= -1.0) break;
    }
  }
  return out;
}

double attack_oracle(double qber, const std::vector<double>& local_visibilities, int level) {
  if (local_visibilities.empty() || local_visibilities.size() > 2)
    fail(ErrorCode::ShapeError, "expected one or two local visibilities");
  AttackConstraints k;
  for (std::size_t i = 0; i < local_visibilities.size(); ++i) {
    StatisticsTable t = werner_chsh_table(local_visibilities[i]);
    const double cap = npo::bound_anticom_sq(t, level).value;
    const double score = chsh_score(t);
    (i == 0 ? k.cap_a : k.cap_b) = cap;
    (i == 0 ? k.score_a : k.score_b) = score;
  }
  AttackCeiling c = attack_ceilings(qber, k);
  return local_visibilities.size() == 1 ? c.one_switch : c.two_switch;
}

}  // namespace dikit
