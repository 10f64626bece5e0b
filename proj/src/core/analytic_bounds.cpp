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

#include "dikit/analytic_bounds.hpp"

#include <algorithm>
#include <cmath>

#include "dikit/entropy.hpp"
#include "dikit/errors.hpp"

namespace dikit {

std::string_view tier_name(RateTier tier) {
  switch (tier) {
    case RateTier::AnalyticProp2: return "analytic-prop2";
    case RateTier::AnalyticThm1: return "analytic-thm1";
    case RateTier::NpoEur: return "npo-eur";
    case RateTier::NpoEntropy: return "npo-entropy";
  }
  return "unknown";
}

RateTier parse_tier(std::string_view name) {
  if (name == "analytic-prop2" || name == "prop2") return RateTier::AnalyticProp2;
  if (name == "analytic-thm1" || name == "thm1") return RateTier::AnalyticThm1;
  if (name == "npo-eur") return RateTier::NpoEur;
  if (name == "npo-entropy") return RateTier::NpoEntropy;
  fail(ErrorCode::ConfigError, "unknown tier '" + std::string(name) + "'");
}

double SelfTestParams::delta() const {
  validate();
  return delta_constant * std::sqrt(epsilon);
}

void SelfTestParams::validate() const {
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) fail(ErrorCode::RangeError, "epsilon must be >= 0");
  if (!(delta_constant > 0.0) || !std::isfinite(delta_constant))
    fail(ErrorCode::RangeError, "delta constant must be > 0");
}

void to_json(nlohmann::json& j, const RateCertificate& c) {
  j = nlohmann::json{{"rate", c.rate},
                     {"tier", std::string(tier_name(c.tier))},
                     {"epsilon", c.epsilon},
                     {"delta_constant", c.delta_constant},
                     {"c_star", c.c_star},
                     {"q_x", c.q_x},
                     {"q_z", c.q_z},
                     {"vacuous", c.vacuous},
                     {"inputs", c.inputs},
                     {"residuals", c.residuals}};
}

namespace {

void check_qber(double q) {
  if (!(q >= 0.0 && q <= 1.0)) fail(ErrorCode::RangeError, "QBER must lie in [0, 1]");
}

}  // namespace

double overlap_from_anticommutator_norm(double norm) {
  if (!(norm >= 0.0 && norm <= 2.0 + 1e-12)) fail(ErrorCode::RangeError, "anticommutator norm must lie in [0, 2]");
  return std::min(1.0, (1.0 + norm / 2.0) / 2.0);
}

RateCertificate prop2_rate(double norm, double qber) {
  check_qber(qber);
  double c = overlap_from_anticommutator_norm(norm);
  RateCertificate cert;
  cert.tier = RateTier::AnalyticProp2;
  cert.c_star = c;
  cert.q_x = cert.q_z = qber;
  cert.rate = 1.0 - std::log2(1.0 + std::min(norm, 2.0) / 2.0) - binary_entropy(qber);
  cert.inputs = {{"anticom_norm", norm}, {"qber", qber}};
  return cert;
}

double overlap_from_moment_bound(double s) {
  if (!(s >= 0.0 && s <= 4.0 + 1e-9)) fail(ErrorCode::RangeError, "moment bound must lie in [0, 4]");
  return std::min(1.0, 0.5 + std::sqrt(std::min(s, 4.0)) / 4.0);
}

RateCertificate eur_rate(double c_star, double q_x, double q_z) {
  if (!(c_star >= 0.5 - 1e-12 && c_star <= 1.0 + 1e-12)) fail(ErrorCode::RangeError, "c* must lie in [1/2, 1]");
  check_qber(q_x);
  check_qber(q_z);
  RateCertificate cert;
  cert.tier = RateTier::NpoEur;
  cert.c_star = c_star;
  cert.q_x = q_x;
  cert.q_z = q_z;
  cert.rate = -std::log2(std::clamp(c_star, 0.5, 1.0)) - binary_entropy(q_x) - binary_entropy(q_z);
  return cert;
}

RateCertificate thm1_rate(const SelfTestParams& params, double q_x, double q_z) {
  params.validate();
  check_qber(q_x);
  check_qber(q_z);
  double delta = params.delta();
  double c_a = 0.25 + 8.0 * delta;
  RateCertificate cert;
  cert.tier = RateTier::AnalyticThm1;
  cert.epsilon = params.epsilon;
  cert.delta_constant = params.delta_constant;
  cert.q_x = q_x;
  cert.q_z = q_z;
  double h = binary_entropy(q_x) + binary_entropy(q_z);
  if (c_a <= 1.0) {
    cert.rate = 1.0 - std::log2(1.0 + 32.0 * delta) - h;
  } else {
    c_a = 1.0;
    cert.vacuous = true;
    cert.rate = -1.0 - h;
  }
  cert.c_star = std::min(1.0, 2.0 * c_a);
  cert.inputs = {{"delta", delta}, {"c_A_star", c_a}};
  return cert;
}

JordanMoments jordan_overlap_oracle(const JordanBlocks& blocks) {
  if (blocks.weights.size() != blocks.angles.size()) fail(ErrorCode::ShapeError, "one angle per block weight");
  JordanMoments out;
  for (std::size_t k = 0; k < blocks.weights.size(); ++k) {
    double p = blocks.weights[k], c = std::cos(blocks.angles[k]);
    out.c_star += p * (1.0 + std::abs(c)) / 2.0;
    out.anticom_sq_moment += 4.0 * p * c * c;
    out.com_sq_moment += 4.0 * p * (1.0 - c * c);
  }
  return out;
}

}  // namespace dikit
