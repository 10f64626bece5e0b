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

#ifndef DIKIT_PIPELINE_SCENARIO_HPP
#define DIKIT_PIPELINE_SCENARIO_HPP

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dikit/analytic_bounds.hpp"
#include "dikit/npo/entropy_tier.hpp"
#include "dikit/npo/sdp.hpp"

namespace dikit {

enum class Switches { One, Two };
enum class ScenarioTier { Analytic, NpoEur, NpoEntropy };

std::string_view scenario_tier_name(ScenarioTier t);
ScenarioTier parse_scenario_tier(std::string_view name);

/// Grid used when neither qber_grid nor shared_visibility is given:
/// 14 evenly spaced points on [0, 0.028].
std::vector<double> default_qber_grid();

struct ScenarioConfig {
  std::vector<double> local_visibility_a{0.99};  // one entry per local test
  std::vector<double> local_visibility_b{0.99};
  std::vector<double> qber_grid = default_qber_grid();
  Switches switches = Switches::Two;
  int local_tests_per_side = 1;
  int npa_level = 2;
  ScenarioTier tier = ScenarioTier::NpoEur;
  double delta_constant = 1.0;
  int m_nodes = 4;
  std::string routing_note;

  /// Throws ConfigError naming the offending field.
  void validate() const;
};

/// All fields optional. Unknown keys are rejected. local_visibility_{A,B}
/// may be a number (repeated local_tests_per_side times) or an array;
/// shared_visibility v maps to qber (1 - v)/2 and excludes qber_grid.
ScenarioConfig scenario_from_json(const nlohmann::json& j);
void to_json(nlohmann::json& j, const ScenarioConfig& c);

struct SideBound {
  npo::Side side = npo::Side::A;
  double visibility = 1.0;
  double chsh_win = 0.0;
  double epsilon = 0.0;  // Tsirelson deficit of the local test
  double s_max = 4.0;    // certified cap on <{X0, X1}^2>
  npo::SdpSolution solution;
};

/// Local-test certification for one side. The Werner CHSH table at the
/// given visibility is the honest local model.
SideBound certify_side(npo::Side side, double visibility, int level);

/// Marginal transfer: the long-range state shares each side's marginal with
/// every local test on that side, so all caps apply and the tightest wins.
std::vector<npo::SideCap> transfer_marginal_bounds(const std::vector<SideBound>& side_bounds);

struct CurvePoint {
  double qber = 0.0;
  double rate_no_switch = 0.0;
  double rate_one_switch = 0.0;
  double rate_two_switch = 0.0;  // NaN when switches = one
  ScenarioTier tier = ScenarioTier::NpoEur;
  bool ok = true;
  std::string error;
  nlohmann::json certificates = nlohmann::json::object();
};

struct ScenarioResult {
  std::vector<CurvePoint> points;  // in qber_grid order
  std::vector<SideBound> side_bounds;
  std::size_t failed = 0;
  nlohmann::json bundle;
};

inline constexpr double kRateFloor = -2.0;

ScenarioResult run_scenario(const ScenarioConfig& cfg, int jobs = 1, const npo::SdpOptions& options = {});

/// qber,rate_no_switch,rate_one_switch,rate_two_switch,tier,status with
/// %.9g numbers, rates floored at kRateFloor.
std::string curve_csv(const std::vector<CurvePoint>& points);

}  // namespace dikit

#endif  // DIKIT_PIPELINE_SCENARIO_HPP
