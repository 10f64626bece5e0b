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

#include "dikit/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "dikit/analytic_bounds.hpp"
#include "dikit/bell_stats.hpp"
#include "dikit/entropy.hpp"
#include "dikit/errors.hpp"
#include "dikit/npo/bounds.hpp"
#include "dikit/pipeline/reference.hpp"
#include "dikit/pipeline/scenario.hpp"
#include "dikit/quantum_model.hpp"

namespace dikit::cli {

using nlohmann::json;

namespace {

constexpr double kStatTol = 1e-8;
constexpr double kEntropyTol = 1e-7;

double table_deviation(const ProbTable& a, const ProbTable& b) {
  if (a.size() != b.size()) return INFINITY;
  double worst = 0.0;
  for (std::size_t x = 0; x < a.size(); ++x) {
    if (a[x].size() != b[x].size()) return INFINITY;
    for (std::size_t y = 0; y < a[x].size(); ++y) {
      if (a[x][y].size() != b[x][y].size()) return INFINITY;
      for (std::size_t i = 0; i < a[x][y].size(); ++i) {
        if (a[x][y][i].size() != b[x][y][i].size()) return INFINITY;
        for (std::size_t j = 0; j < a[x][y][i].size(); ++j)
          worst = std::max(worst, std::abs(a[x][y][i][j] - b[x][y][i][j]));
      }
    }
  }
  return worst;
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// ---- curve -----------------------------------------------------------------

struct CurveArgs {
  std::string config, out, tier;
  int jobs = 1;
  bool experimental = false;
};

int cmd_curve(const CurveArgs& a, std::ostream& out, std::ostream& err) {
  ScenarioConfig cfg;
  try {
    std::ifstream in(a.config);
    if (!in) {
      err << "error: cannot read config '" << a.config << "'\n";
      return kUsage;
    }
    json j;
    try {
      j = json::parse(in);
    } catch (const json::parse_error& e) {
      err << "error: config is not valid JSON: " << e.what() << '\n';
      return kUsage;
    }
    if (!a.tier.empty() && j.is_object()) j["tier"] = a.tier;
    cfg = scenario_from_json(j);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  if (cfg.tier == ScenarioTier::NpoEntropy && !a.experimental) {
    err << "error: tier npo-entropy is experimental and disabled; rerun with --experimental-entropy-tier "
           "or choose tier analytic / npo-eur\n";
    return kUsage;
  }
  if (a.jobs < 1) {
    err << "error: --jobs must be >= 1\n";
    return kUsage;
  }

  ScenarioResult res = run_scenario(cfg, a.jobs);
  json bundle = res.bundle;
  try {
    auto report = reference_report(res.points, load_reference());
    out << "reference comparison (informational, not asserted):\n" << format_report(report);
    bundle["reference_report"] = report;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::FixtureMissing) throw;
    err << "note: " << e.what() << "; skipping reference comparison\n";
  }

  std::ofstream csv(a.out, std::ios::binary);
  if (!csv) {
    err << "error: cannot write '" << a.out << "'\n";
    return kUsage;
  }
  csv << curve_csv(res.points);
  std::filesystem::path cert_path(a.out);
  cert_path.replace_extension(".certificates.json");
  std::ofstream cert(cert_path, std::ios::binary);
  cert << bundle.dump(2) << '\n';

  out << "wrote " << a.out << " and " << cert_path.string() << " (" << res.points.size() << " points, "
      << res.failed << " failed)\n";
  for (const CurvePoint& p : res.points)
    if (!p.ok) err << "point qber=" << p.qber << " failed: " << p.error << '\n';
  return res.failed == 0 ? kOk : kNumerical;
}

// ---- bound -----------------------------------------------------------------

struct BoundArgs {
  double qber = 0.0;
  std::optional<double> epsilon, anticom_norm;
  std::string tier;
  double delta_constant = 1.0;
};

int cmd_bound(const BoundArgs& a, std::ostream& out, std::ostream& err) {
  if (a.epsilon && a.anticom_norm) {
    err << "error: --epsilon and --anticom-norm conflict; give exactly one\n";
    return kUsage;
  }
  if (!a.epsilon && !a.anticom_norm) {
    err << "error: give one of --epsilon or --anticom-norm\n";
    return kUsage;
  }
  RateTier tier = a.epsilon ? RateTier::AnalyticThm1 : RateTier::AnalyticProp2;
  if (!a.tier.empty()) {
    try {
      tier = parse_tier(a.tier);
    } catch (const Error& e) {
      err << "error: " << e.what() << '\n';
      return kUsage;
    }
  }
  const bool wants_eps = tier == RateTier::AnalyticThm1;
  const bool wants_norm = tier == RateTier::AnalyticProp2;
  if ((!wants_eps && !wants_norm) || (wants_eps && !a.epsilon) || (wants_norm && !a.anticom_norm)) {
    err << "error: tier " << tier_name(tier) << " conflicts with the given flags (thm1 takes --epsilon, prop2 takes "
        << "--anticom-norm)\n";
    return kUsage;
  }
  try {
    RateCertificate c = wants_eps ? thm1_rate({*a.epsilon, a.delta_constant}, a.qber, a.qber)
                                  : prop2_rate(*a.anticom_norm, a.qber);
    out << json(c).dump(2) << '\n';
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kOk;
}

// ---- chsh ------------------------------------------------------------------

int cmd_chsh(double v, int level, std::ostream& out, std::ostream& err) {
  if (!(v >= 0.0 && v <= 1.0)) {
    err << "error: --visibility must lie in [0, 1]\n";
    return kUsage;
  }
  if (level < 1 || level > 3) {
    err << "error: --level must be 1, 2 or 3\n";
    return kUsage;
  }
  double classical = 0.0;
  for (int s = 0; s < 16; ++s) {
    StatisticsTable t = deterministic_table({s & 1, (s >> 1) & 1}, {(s >> 2) & 1, (s >> 3) & 1});
    classical = std::max(classical, chsh_winning_prob(t));
  }
  StatisticsTable t = werner_chsh_table(v);
  npo::MomentBound npa = npo::max_chsh_score(level);
  npo::MomentBound cap = npo::bound_anticom_sq(t, std::max(level, 2));
  const double w = chsh_winning_prob(t);
  json j = {{"visibility", v},
            {"winning_probability", w},
            {"score", chsh_score(t)},
            {"epsilon", chsh_epsilon(w)},
            {"classical_max_winning_probability", classical},
            {"npa_level", level},
            {"npa_max_score", npa.value},
            {"anticom_sq_cap", cap.value},
            {"c_star", overlap_from_moment_bound(cap.value)},
            {"anticom_sq_solution", cap.solution}};
  out << j.dump(2) << '\n';
  return kOk;
}

// ---- equiv-check -----------------------------------------------------------

int cmd_equiv(std::uint64_t seed, int trials, bool corrupt, std::ostream& out, std::ostream& err) {
  if (trials < 1) {
    err << "error: --trials must be >= 1\n";
    return kUsage;
  }
  EquivReport r;
  try {
    r = equivalence_check(seed, trials, corrupt);
  } catch (const Error& e) {
    err << "FAIL " << error_code_name(e.code()) << ": " << e.what() << " (seed " << seed << ")\n";
    return kNumerical;
  }
  out << "trials " << r.trials << "\nmax statistics deviation " << fmt("%.3e", r.max_stat_deviation)
      << "\nmax entropy deviation " << fmt("%.3e", r.max_entropy_deviation) << '\n';
  if (r.max_stat_deviation <= kStatTol && r.max_entropy_deviation <= kEntropyTol) {
    out << "PASS\n";
    return kOk;
  }
  err << "FAIL: deviation above (" << kStatTol << ", " << kEntropyTol << ") at seed " << r.worst_seed << '\n';
  return kNumerical;
}

// ---- sdp-selftest ----------------------------------------------------------

int cmd_selftest(bool loose, std::ostream& out, std::ostream& err) {
  npo::SdpOptions opts;
  if (loose) {
    opts.tolerance = 0.5;
    opts.max_iterations = 2;
  }
  std::vector<SelftestRow> rows = sdp_selftest(opts);
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-28s %14s %14s %11s %9s  %s\n", "check", "bound", "target", "deviation", "tol",
                "result");
  out << buf;
  int failed = 0;
  for (const SelftestRow& r : rows) {
    std::snprintf(buf, sizeof buf, "%-28s %14.9f %14.9f %11.2e %9.0e  %s\n", r.name.c_str(), r.bound, r.target,
                  r.bound - r.target, r.tolerance, r.pass ? "PASS" : "FAIL");
    out << buf;
    failed += !r.pass;
  }
  if (failed) {
    err << failed << " self-test check(s) failed:";
    for (const SelftestRow& r : rows)
      if (!r.pass) err << ' ' << r.name;
    err << '\n';
    return kNumerical;
  }
  return kOk;
}

}  // namespace

EquivReport equivalence_check(std::uint64_t seed, int trials, bool corrupt_marginal) {
  EquivReport r;
  r.trials = trials;
  double worst = -1.0;
  for (int k = 0; k < trials; ++k) {
    const std::uint64_t s = seed + static_cast<std::uint64_t>(k);
    std::mt19937_64 rng(s);
    RoutedModel m = random_routed_model(rng);
    if (corrupt_marginal) m.rho_s = random_density(m.rho_s.space(), m.rho_s.dim(), rng);
    TranslatedModel t = translate_routed_model(m);
    const double stat = std::max(table_deviation(routed_long_range_stats(m), translated_long_range_stats(t)),
                                 table_deviation(routed_short_range_stats(m), translated_short_range_stats(t)));

    // H(A|E) before and after the translation, unmeasured and with A's key measurement
    DensityMatrix chi_ae(FactorSpace({t.space.dim(0), t.chi_l.env_dim}),
                         reduced_pure_state(t.chi_l.psi, t.chi_l.space, std::vector<std::size_t>{0, 3}));
    DensityMatrix psi_ae(FactorSpace({t.space.dim(0), t.space.dim(2) * t.space.dim(3)}),
                         reduced_pure_state(t.psi, t.space, std::vector<std::size_t>{0, 2, 3}));
    const std::vector<std::size_t> env_l{3}, env_t{2, 3};
    const double ent = std::max(
        std::abs(cond_entropy(chi_ae, 1) - cond_entropy(psi_ae, 1)),
        std::abs(measured_cond_entropy(t.chi_l.psi, t.chi_l.space, 0, m.alice[0], env_l) -
                 measured_cond_entropy(t.psi, t.space, 0, t.alice[0], env_t)));
    r.max_stat_deviation = std::max(r.max_stat_deviation, stat);
    r.max_entropy_deviation = std::max(r.max_entropy_deviation, ent);
    const double score = std::max(stat / kStatTol, ent / kEntropyTol);
    if (score > worst) {
      worst = score;
      r.worst_seed = s;
    }
  }
  return r;
}

std::vector<SelftestRow> sdp_selftest(const npo::SdpOptions& opts) {
  std::vector<SelftestRow> rows;
  auto add = [&](std::string name, double bound, double target, double tol) {
    rows.push_back({std::move(name), bound, target, tol, std::abs(bound - target) <= tol});
  };
  const double tsirelson = 2.0 * std::numbers::sqrt2;
  add("tsirelson level 1", npo::max_chsh_score(1, opts).value, tsirelson, 1e-5);
  add("tsirelson level 2", npo::max_chsh_score(2, opts).value, tsirelson, 1e-5);
  add("anticom^2 deterministic", npo::bound_anticom_sq(deterministic_table({0, 1}, {0, 0}), 2, true, opts).value, 4.0,
      1e-5);
  add("anticom^2 v=0", npo::bound_anticom_sq(werner_chsh_table(0.0), 2, true, opts).value, 4.0, 1e-5);
  add("anticom^2 v=1", npo::bound_anticom_sq(werner_chsh_table(1.0), 2, true, opts).value, 0.0, 1e-4);

  double prev = INFINITY, rise = 0.0;
  for (double v : {0.0, 0.5, 0.9, 0.99, 1.0}) {
    double b = npo::bound_anticom_sq(werner_chsh_table(v), 2, true, opts).value;
    rise = std::max(rise, b - prev);
    prev = b;
  }
  add("anticom^2 monotone in v", std::max(0.0, rise), 0.0, 1e-6);
  const StatisticsTable t = werner_chsh_table(0.99);
  const double l2 = npo::bound_anticom_sq(t, 2, true, opts).value;
  const double l3 = npo::bound_anticom_sq(t, 3, true, opts).value;
  add("anticom^2 level 3 <= level 2", std::max(0.0, l3 - l2), 0.0, 1e-6);
  const double com = npo::bound_com_sq(t, 2, true, opts).value;
  add("com^2 + anticom^2 = 4", l2 + com, 4.0, 1e-5);
  return rows;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Device-independent key-rate certification for routed Bell tests", "dikit"};
  app.require_subcommand(1);

  CurveArgs curve;
  auto* c = app.add_subcommand("curve", "Run a scenario over a QBER grid; writes CSV and a certificate bundle");
  c->add_option("--config", curve.config, "Scenario JSON")->required();
  c->add_option("--out", curve.out, "Output CSV path")->required();
  c->add_option("--tier", curve.tier, "analytic | npo-eur | npo-entropy (overrides the config)");
  c->add_option("--jobs", curve.jobs, "Worker threads")->capture_default_str();
  c->add_flag("--experimental-entropy-tier", curve.experimental, "Enable the npo-entropy tier");

  BoundArgs bound;
  auto* b = app.add_subcommand("bound", "Single-point key-rate certificate (JSON on stdout)");
  b->add_option("--qber", bound.qber, "QBER in both bases")->required();
  b->add_option("--epsilon", bound.epsilon, "Self-test robustness (thm1 tier)");
  b->add_option("--anticom-norm", bound.anticom_norm, "Operator norm of {A0,A1} (prop2 tier)");
  b->add_option("--tier", bound.tier, "thm1 | prop2");
  b->add_option("--delta-constant", bound.delta_constant, "Robustness constant C in delta = C sqrt(eps)")
      ->capture_default_str();

  double vis = 1.0;
  int level = 1;
  auto* ch = app.add_subcommand("chsh", "CHSH diagnostics for a Werner local test");
  ch->add_option("--visibility", vis, "Werner visibility")->capture_default_str();
  ch->add_option("--level", level, "NPA level for the Tsirelson bound")->capture_default_str();

  std::uint64_t seed = 7;
  int trials = 100;
  bool corrupt = false;
  auto* eq = app.add_subcommand("equiv-check", "Routed-model translation equivalence check");
  eq->add_option("--seed", seed, "Base seed")->capture_default_str();
  eq->add_option("--trials", trials, "Number of random models")->capture_default_str();
  eq->add_flag("--corrupt-marginal", corrupt, "Test hook: break the marginal constraint")->group("");

  bool loose = false;
  auto* st = app.add_subcommand("sdp-selftest", "Solver conformance battery");
  st->add_flag("--inject-loose-tolerance", loose, "Test hook: cripple the solver")->group("");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    if (*c) return cmd_curve(curve, out, err);
    if (*b) return cmd_bound(bound, out, err);
    if (*ch) return cmd_chsh(vis, level, out, err);
    if (*eq) return cmd_equiv(seed, trials, corrupt, out, err);
    if (*st) return cmd_selftest(loose, out, err);
  } catch (const Error& e) {
    err << "error [" << error_code_name(e.code()) << "]: " << e.what() << '\n';
    return e.code() == ErrorCode::ConfigError ? kUsage : kNumerical;
  }
  return kUsage;
}

}  // namespace dikit::cli
