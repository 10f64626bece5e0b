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

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>

#include "dikit/bell_stats.hpp"
#include "dikit/errors.hpp"
#include "dikit/hermitian.hpp"
#include "dikit/npo/bounds.hpp"
#include "dikit/npo/moment_problem.hpp"
#include "dikit/quantum_model.hpp"

using namespace dikit;
using namespace dikit::npo;

namespace {

ComplexMatrix observable(const PVM& p) { return p.projectors[0] - p.projectors[1]; }

// <w> for a two-qubit model with Alice on factor 0 and the partner on factor 1
double quantum_moment(const Word& w, const DensityMatrix& rho, const std::vector<PVM>& a, const std::vector<PVM>& f) {
  ComplexMatrix m = pauli::identity(4);
  for (const Letter& l : w.letters()) {
    const ComplexMatrix id = pauli::identity(2);
    m = m * (l.party == 0 ? kron(observable(a[l.index]), id) : kron(id, observable(f[l.index])));
  }
  return (rho.mat() * m).trace().real();
}

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::ConfigError;
}

}  // namespace

TEST_CASE("index set sizes per level") {
  auto parties = local_test_parties();
  CHECK(level_index_words(parties, 1).size() == 9);
  CHECK(level_index_words(parties, 2).size() == 25);
  CHECK(level_index_words(parties, 3).size() == 49);
  auto w = level_index_words(parties, 2);
  CHECK(w.front().empty());
  CHECK(std::is_sorted(w.begin(), w.end(), [](const Word& x, const Word& y) { return x.size() < y.size(); }));
  CHECK(std::adjacent_find(w.begin(), w.end()) == w.end());
}

TEST_CASE("level-1 moment matrix shape") {
  MomentProblemSpec spec;
  spec.parties = local_test_parties();
  spec.level = 1;
  spec.objective = chsh_polynomial();
  MomentProblem p = build_moment_problem(spec);
  REQUIRE(p.psd_blocks.size() == 1);
  const auto& g = p.psd_blocks[0];
  REQUIRE(g.size() == 9);
  CHECK(g[0][0] == 0);
  for (std::size_t i = 0; i < 9; ++i) {
    CHECK(g[i][i] == 0);  // involutions square to 1
    for (std::size_t j = 0; j < 9; ++j) CHECK(g[i][j] == g[j][i]);
  }
  // 1, A_x, F_y, A0A1, F0F1, A_xF_y, A0A1F_y, A_xF0F1 and two A0A1F0F1 orderings
  CHECK(p.variable_count() == 17);
  CHECK(p.sense == Sense::Max);
  CHECK(p.objective.coeffs.size() == 4);
}

TEST_CASE("moments of a genuine model are feasible") {
  const auto a = chsh_alice_settings(), f = chsh_partner_settings();
  for (double v : {0.3, 0.8, 1.0}) {
    const DensityMatrix rho = werner_state(v);
    const StatisticsTable t = werner_chsh_table(v);
    MomentProblemSpec spec;
    spec.parties = local_test_parties();
    spec.level = 2;
    spec.equalities = table_conditions(t, true);
    spec.upper_bounds.push_back({anticom_sq_polynomial(0), 4.0, "cap"});
    spec.objective = anticom_sq_polynomial(0);
    MomentProblem p = build_moment_problem(spec);

    std::vector<double> y(p.variable_count());
    for (std::size_t k = 0; k < y.size(); ++k) y[k] = quantum_moment(p.moment_vars[k], rho, a, f);
    CHECK(y[0] == Catch::Approx(1.0));
    for (const auto& block : p.psd_blocks) {
      const auto n = static_cast<Eigen::Index>(block.size());
      RealMatrix m(n, n);
      for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) m(i, j) = y[block[i][j]];
      CHECK(Eigen::SelfAdjointEigenSolver<RealMatrix>(m).eigenvalues().minCoeff() > -1e-10);
    }
    for (const auto& c : p.eq_constraints) {
      double lhs = 0.0;
      for (auto [id, coeff] : c.coeffs) lhs += coeff * y[id];
      CHECK(lhs == Catch::Approx(c.target).margin(1e-10));
    }
    for (const auto& c : p.le_constraints) {
      double lhs = 0.0;
      for (auto [id, coeff] : c.coeffs) lhs += coeff * y[id];
      CHECK(lhs <= c.target + 1e-10);
    }
    for (std::size_t k = 0; k < y.size(); ++k) CHECK(std::abs(y[k]) <= p.var_bounds[k] + 1e-12);
    // ideal observables anticommute: {A0,A1}^2 = 0
    if (v == 1.0) CHECK(p.evaluate(anticom_sq_polynomial(0), y) == Catch::Approx(0.0).margin(1e-12));
  }
}

TEST_CASE("terms outside the moment matrix are rejected") {
  MomentProblemSpec spec;
  spec.parties = local_test_parties();
  spec.level = 1;
  spec.objective = anticom_sq_polynomial(0);  // degree 4 on one party
  CHECK(code_of([&] { build_moment_problem(spec); }) == ErrorCode::LevelTooLow);
  spec.level = 2;
  CHECK_NOTHROW(build_moment_problem(spec));
}

TEST_CASE("free letters get norm caps") {
  MomentProblemSpec spec;
  spec.parties = {{"A", 2, false, true}, {"Z", 1, true, false}};
  spec.level = 1;
  const Word z{free_letter(1, 0)}, zs{free_letter(1, 0, true)};
  spec.extra_index_words = {z, zs, Word{inv(0, 0)} * z};
  spec.free_letter_norm = 3.0;
  spec.objective = Polynomial(z) + Polynomial(zs);
  MomentProblem p = build_moment_problem(spec);
  CHECK(p.index_words.size() == 3 + 3);
  REQUIRE(!p.le_constraints.empty());
  for (const auto& c : p.le_constraints) CHECK(c.target == Catch::Approx(9.0));
  auto id = p.find_var(moment_key(z));
  REQUIRE(id);
  CHECK(p.var_bounds[*id] == Catch::Approx(3.0));
  nlohmann::json j = p;
  CHECK(j.contains("index_words"));
}
