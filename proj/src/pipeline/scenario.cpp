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

#include "dikit/pipeline/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>
#include <thread>

#include "dikit/bell_stats.hpp"
#include "dikit/errors.hpp"
#include "dikit/npo/bounds.hpp"

namespace dikit {

using nlohmann::json;

namespace {

const double kNaN = std::numeric_limits<double>::quiet_NaN();

[[noreturn]] void bad_field(const std::string& field, const std::string& why) {
  fail(ErrorCode::ConfigError, field + ": " + why);
}

double number(const json& j, const std::string& field) {
  if (!j.is_number()) bad_field(field, "expected a number");
  return j.get<double>();
}

int integer(const json& j, const std::string& field) {
  if (!j.is_number_integer()) bad_field(field, "expected an integer");
  return j.get<int>();
}

std::vector<double> numbers(const json& j, const std::string& field) {
  if (j.is_number()) return {j.get<double>()};
  if (!j.is_array()) bad_field(field, "expected a number or an array of numbers");
  std::vector<double> out;
  for (const auto& v : j) out.push_back(number(v, field));
  return out;
}

std::string text(const json& j, const std::string& field) {
  if (!j.is_string()) bad_field(field, "expected a string");
  return j.get<std::string>();
}

std::vector<double> widen(const std::vector<double>& v, int n, const std::string& field) {
  if (v.size() == 1 && n > 1) return std::vector<double>(static_cast<std::size_t>(n), v[0]);
  if (static_cast<int>(v.size()) != n) bad_field(field, "needs one entry per local test (local_tests_per_side)");
  return v;
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

double floored(double r) { return std::isnan(r) ? r : std::max(kRateFloor, r); }

struct SetUp {
  double cap_a = 4.0, cap_b = 4.0;
  double eps_a = 0.0, eps_b = 0.0;
  std::vector<npo::SideCap> caps_a, caps_ab;
};

CurvePoint evaluate_point(const ScenarioConfig& cfg, const SetUp& s, double q, const npo::SdpOptions& opts) {
  CurvePoint pt;
  pt.qber = q;
  pt.tier = cfg.tier;
  pt.rate_no_switch = 0.0;  // BB84 statistics alone admit a local model

  const StatisticsTable table = werner_bb84_table(1.0 - 2.0 * q);
  const BB84Errors e = bb84_errors(table);
  RateCertificate one, two_a, two_b;
  switch (cfg.tier) {
    case ScenarioTier::Analytic:
      one = thm1_rate({s.eps_a, cfg.delta_constant}, e.q_x, e.q_z);
      two_a = one;
      two_b = thm1_rate({s.eps_b, cfg.delta_constant}, e.q_x, e.q_z);  // key read off Bob's side
      break;
    case ScenarioTier::NpoEur:
      one = eur_rate(overlap_from_moment_bound(s.cap_a), e.q_x, e.q_z);
      two_a = one;
      two_b = eur_rate(overlap_from_moment_bound(s.cap_b), e.q_x, e.q_z);
      break;
    case ScenarioTier::NpoEntropy:
      one = npo::bff_entropy_bound(table, s.caps_a, cfg.m_nodes, cfg.npa_level, opts).certificate;
      if (cfg.switches == Switches::Two)
        two_a = npo::bff_entropy_bound(table, s.caps_ab, cfg.m_nodes, cfg.npa_level, opts).certificate;
      two_b = two_a;
      break;
  }
  pt.rate_one_switch = one.rate;
  pt.certificates["one_switch"] = one;
  if (cfg.switches == Switches::Two) {
    // every certificate valid under the weaker constraint set is valid here too
    const RateCertificate* best = &one;
    if (two_a.rate > best->rate) best = &two_a;
    if (two_b.rate > best->rate) best = &two_b;
    pt.rate_two_switch = best->rate;
    pt.certificates["two_switch"] = *best;
  } else {
    pt.rate_two_switch = kNaN;
  }
  return pt;
}

}  // namespace

std::string_view scenario_tier_name(ScenarioTier t) {
  switch (t) {
    case ScenarioTier::Analytic: return "analytic";
    case ScenarioTier::NpoEur: return "npo-eur";
    case ScenarioTier::NpoEntropy: return "npo-entropy";
  }
  return "?";
}

ScenarioTier parse_scenario_tier(std::string_view name) {
  if (name == "analytic") return ScenarioTier::Analytic;
  if (name == "npo-eur") return ScenarioTier::NpoEur;
  if (name == "npo-entropy") return ScenarioTier::NpoEntropy;
  fail(ErrorCode::ConfigError, "tier: expected analytic, npo-eur or npo-entropy, got '" + std::string(name) + "'");
}

std::vector<double> default_qber_grid() {
  std::vector<double> g;
  for (int k = 0; k < 14; ++k) g.push_back(0.028 * k / 13.0);
  return g;
}

void ScenarioConfig::validate() const {
  if (local_tests_per_side < 1) bad_field("local_tests_per_side", "must be >= 1");
  for (const auto& [field, vis] : {std::pair{"local_visibility_A", &local_visibility_a},
                                   std::pair{"local_visibility_B", &local_visibility_b}}) {
    if (static_cast<int>(vis->size()) != local_tests_per_side)
      bad_field(field, "needs one entry per local test (local_tests_per_side)");
    for (double v : *vis)
      if (!(v >= 0.0 && v <= 1.0)) bad_field(field, "must lie in [0, 1]");
  }
  if (qber_grid.empty()) fail(ErrorCode::ConfigError, "qber_grid must be non-empty");
  for (double q : qber_grid)
    if (!(q >= 0.0 && q <= 0.5)) bad_field("qber_grid", "values must lie in [0, 1/2]");
  if (npa_level < 1 || npa_level > 3) bad_field("npa_level", "must be 1, 2 or 3");
  if (!(delta_constant > 0.0) || !std::isfinite(delta_constant)) bad_field("delta_constant", "must be positive");
  if (m_nodes < 2 || m_nodes > 8) bad_field("m_nodes", "must lie in [2, 8]");
  if (tier == ScenarioTier::NpoEntropy && npa_level < 2) bad_field("npa_level", "npo-entropy needs level >= 2");
}

ScenarioConfig scenario_from_json(const json& j) {
  if (!j.is_object()) fail(ErrorCode::ConfigError, "config: expected a JSON object");
  static const std::set<std::string> known{"local_visibility_A", "local_visibility_B", "shared_visibility",
                                           "qber_grid",          "switches",           "local_tests_per_side",
                                           "npa_level",          "tier",               "delta_constant",
                                           "m_nodes",            "routing_note"};
  for (const auto& [key, _] : j.items())
    if (!known.count(key)) bad_field(key, "unknown field");

  ScenarioConfig c;
  std::vector<double> va{0.99}, vb{0.99};
  bool explicit_count = false;
  if (j.contains("local_tests_per_side")) {
    c.local_tests_per_side = integer(j["local_tests_per_side"], "local_tests_per_side");
    explicit_count = true;
    if (c.local_tests_per_side < 1) bad_field("local_tests_per_side", "must be >= 1");
  }
  if (j.contains("local_visibility_A")) va = numbers(j["local_visibility_A"], "local_visibility_A");
  if (j.contains("local_visibility_B")) vb = numbers(j["local_visibility_B"], "local_visibility_B");
  if (!explicit_count) c.local_tests_per_side = static_cast<int>(std::max({va.size(), vb.size(), std::size_t{1}}));
  if (va.empty()) bad_field("local_visibility_A", "must be non-empty");
  if (vb.empty()) bad_field("local_visibility_B", "must be non-empty");
  c.local_visibility_a = widen(va, c.local_tests_per_side, "local_visibility_A");
  c.local_visibility_b = widen(vb, c.local_tests_per_side, "local_visibility_B");

  if (j.contains("qber_grid") && j.contains("shared_visibility"))
    bad_field("shared_visibility", "give either shared_visibility or qber_grid, not both");
  if (j.contains("qber_grid")) {
    if (!j["qber_grid"].is_array()) bad_field("qber_grid", "expected an array of numbers");
    c.qber_grid = numbers(j["qber_grid"], "qber_grid");
  } else if (j.contains("shared_visibility")) {
    c.qber_grid.clear();
    for (double v : numbers(j["shared_visibility"], "shared_visibility")) {
      if (!(v >= 0.0 && v <= 1.0)) bad_field("shared_visibility", "must lie in [0, 1]");
      c.qber_grid.push_back((1.0 - v) / 2.0);
    }
  }
  if (j.contains("switches")) {
    std::string s = text(j["switches"], "switches");
    if (s == "one") c.switches = Switches::One;
    else if (s == "two") c.switches = Switches::Two;
    else bad_field("switches", "expected \"one\" or \"two\"");
  }
  if (j.contains("npa_level")) c.npa_level = integer(j["npa_level"], "npa_level");
  if (j.contains("tier")) c.tier = parse_scenario_tier(text(j["tier"], "tier"));
  if (j.contains("delta_constant")) c.delta_constant = number(j["delta_constant"], "delta_constant");
  if (j.contains("m_nodes")) c.m_nodes = integer(j["m_nodes"], "m_nodes");
  if (j.contains("routing_note")) c.routing_note = text(j["routing_note"], "routing_note");
  c.validate();
  return c;
}

void to_json(json& j, const ScenarioConfig& c) {
  j = {{"local_visibility_A", c.local_visibility_a},
       {"local_visibility_B", c.local_visibility_b},
       {"qber_grid", c.qber_grid},
       {"switches", c.switches == Switches::One ? "one" : "two"},
       {"local_tests_per_side", c.local_tests_per_side},
       {"npa_level", c.npa_level},
       {"tier", scenario_tier_name(c.tier)},
       {"delta_constant", c.delta_constant},
       {"m_nodes", c.m_nodes},
       {"routing_note", c.routing_note}};
}

SideBound certify_side(npo::Side side, double visibility, int level) {
  SideBound b;
  b.side = side;
  b.visibility = visibility;
  const StatisticsTable t = werner_chsh_table(visibility);
  b.chsh_win = chsh_winning_prob(t);
  b.epsilon = chsh_epsilon(b.chsh_win);
  npo::MomentBound mb = npo::bound_anticom_sq(t, level, true);
  b.s_max = mb.value;
  b.solution = std::move(mb.solution);
  return b;
}

std::vector<npo::SideCap> transfer_marginal_bounds(const std::vector<SideBound>& side_bounds) {
  std::vector<npo::SideCap> caps;
  for (npo::Side side : {npo::Side::A, npo::Side::B}) {
    std::optional<double> best;
    for (const SideBound& b : side_bounds)
      if (b.side == side) best = best ? std::min(*best, b.s_max) : b.s_max;
    if (best) caps.push_back({side, *best});
  }
  return caps;
}

ScenarioResult run_scenario(const ScenarioConfig& cfg, int jobs, const npo::SdpOptions& opts) {
  cfg.validate();
  ScenarioResult res;
  const std::size_t n = cfg.qber_grid.size();
  res.points.resize(n);

  SetUp s;
  std::string setup_error;
  try {
    for (double v : cfg.local_visibility_a) res.side_bounds.push_back(certify_side(npo::Side::A, v, cfg.npa_level));
    if (cfg.switches == Switches::Two)
      for (double v : cfg.local_visibility_b) res.side_bounds.push_back(certify_side(npo::Side::B, v, cfg.npa_level));
    s.caps_ab = transfer_marginal_bounds(res.side_bounds);
    s.eps_a = s.eps_b = std::numeric_limits<double>::infinity();
    for (const SideBound& b : res.side_bounds) {
      double& eps = b.side == npo::Side::A ? s.eps_a : s.eps_b;
      eps = std::min(eps, b.epsilon);
    }
    for (const npo::SideCap& c : s.caps_ab) {
      (c.side == npo::Side::A ? s.cap_a : s.cap_b) = c.s_max;
      if (c.side == npo::Side::A) s.caps_a.push_back(c);
    }
    if (!std::isfinite(s.eps_b)) s.eps_b = s.eps_a;
  } catch (const std::exception& ex) {
    setup_error = std::string("local-test certification failed: ") + ex.what();
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < n;) {
      CurvePoint& pt = res.points[i];
      if (!setup_error.empty()) {
        pt = CurvePoint{cfg.qber_grid[i], kNaN, kNaN, kNaN, cfg.tier, false, setup_error, json::object()};
        continue;
      }
      try {
        pt = evaluate_point(cfg, s, cfg.qber_grid[i], opts);
      } catch (const std::exception& ex) {
        pt = CurvePoint{cfg.qber_grid[i], 0.0, kNaN, kNaN, cfg.tier, false, ex.what(), json::object()};
      }
    }
  };
  const int workers = std::clamp(jobs, 1, static_cast<int>(std::max<std::size_t>(n, 1)));
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  json sides = json::array();
  for (const SideBound& b : res.side_bounds)
    sides.push_back({{"side", b.side == npo::Side::A ? "A" : "B"},
                     {"visibility", b.visibility},
                     {"chsh_win", b.chsh_win},
                     {"epsilon", b.epsilon},
                     {"s_max", b.s_max},
                     {"solution", b.solution}});
  json caps = json::array();
  for (const npo::SideCap& c : s.caps_ab) caps.push_back({{"side", c.side == npo::Side::A ? "A" : "B"}, {"s_max", c.s_max}});
  json points = json::array();
  for (const CurvePoint& p : res.points) {
    if (!p.ok) ++res.failed;
    json jp = {{"qber", p.qber},
               {"status", p.ok ? "ok" : "failed"},
               {"rate_no_switch", p.rate_no_switch},
               {"rate_one_switch", std::isnan(p.rate_one_switch) ? json(nullptr) : json(p.rate_one_switch)},
               {"rate_two_switch", std::isnan(p.rate_two_switch) ? json(nullptr) : json(p.rate_two_switch)},
               {"certificates", p.certificates}};
    if (!p.ok) jp["error"] = p.error;
    points.push_back(std::move(jp));
  }
  res.bundle = {{"config", cfg}, {"side_bounds", sides}, {"marginal_caps", caps}, {"points", points}};
  if (!setup_error.empty()) res.bundle["error"] = setup_error;
  return res;
}

std::string curve_csv(const std::vector<CurvePoint>& points) {
  std::string out = "qber,rate_no_switch,rate_one_switch,rate_two_switch,tier,status\n";
  for (const CurvePoint& p : points) {
    out += format_number(p.qber) + ',' + format_number(floored(p.rate_no_switch)) + ',' +
           format_number(floored(p.rate_one_switch)) + ',' + format_number(floored(p.rate_two_switch)) + ',' +
           std::string(scenario_tier_name(p.tier)) + ',' + (p.ok ? "ok" : "failed") + '\n';
  }
  return out;
}

}  // namespace dikit
