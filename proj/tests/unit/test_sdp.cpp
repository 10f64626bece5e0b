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

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "dikit/npo/bounds.hpp"
#include "dikit/npo/sdp.hpp"

using namespace dikit;
using namespace dikit::npo;

namespace {

SparseSymmetric dense_block(const Eigen::MatrixXd& m, std::size_t block) {
  SparseSymmetric out;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = i; j < m.cols(); ++j)
      if (m(i, j) != 0.0) out.push_back({block, static_cast<std::size_t>(i), static_cast<std::size_t>(j), m(i, j)});
  return out;
}

// max y s.t. M_k - y I >= 0 for every block: y* = min_k lambda_min(M_k)
SdpProblem min_eigen_problem(const std::vector<Eigen::MatrixXd>& ms) {
  SdpProblem p;
  p.a.resize(1);
  double bound = 0.0;
  for (std::size_t k = 0; k < ms.size(); ++k) {
    p.block_dims.push_back(static_cast<std::size_t>(ms[k].rows()));
    for (const auto& e : dense_block(ms[k], k)) p.c.push_back(e);
    for (const auto& e : dense_block(Eigen::MatrixXd::Identity(ms[k].rows(), ms[k].rows()), k)) p.a[0].push_back(e);
    bound = std::max(bound, ms[k].norm());
  }
  p.b = Eigen::VectorXd::Ones(1);
  p.e = Eigen::MatrixXd(0, 1);
  p.f = Eigen::VectorXd(0);
  p.y_bound = Eigen::VectorXd::Constant(1, bound);
  return p;
}

// 3x3 correlation matrix with off-diagonals (y0, y1, y2)
SdpProblem elliptope() {
  SdpProblem p;
  p.block_dims = {3};
  p.c = {{0, 0, 0, 1.0}, {0, 1, 1, 1.0}, {0, 2, 2, 1.0}};
  p.a = {{{0, 0, 1, -1.0}}, {{0, 0, 2, -1.0}}, {{0, 1, 2, -1.0}}};
  p.b = Eigen::Vector3d(0, 1, 0);
  p.e = Eigen::MatrixXd::Zero(2, 3);
  p.e(0, 0) = 1.0;
  p.e(1, 2) = 1.0;
  p.f = Eigen::Vector2d(0.8, 0.6);
  p.y_bound = Eigen::Vector3d::Ones();
  return p;
}

}  // namespace

TEST_CASE("2x2 toy problem") {
  SdpProblem p;
  p.block_dims = {2};
  p.c = {{0, 0, 0, 1.0}, {0, 1, 1, 1.0}};
  p.a = {{{0, 0, 1, -1.0}}};
  p.b = Eigen::VectorXd::Ones(1);
  p.e = Eigen::MatrixXd(0, 1);
  p.f = Eigen::VectorXd(0);
  p.y_bound = Eigen::VectorXd::Ones(1);
  SdpSolution s = solve_sdp(p);
  CHECK(s.status == SdpStatus::Optimal);
  CHECK(s.primal_value == Catch::Approx(1.0).margin(1e-7));
  CHECK(s.certified_bound >= 1.0 - 1e-12);
  CHECK(s.certified_bound <= 1.0 + 1e-6);

  p.b(0) = -1.0;  // max -y
  s = solve_sdp(p);
  CHECK(s.certified_bound == Catch::Approx(1.0).margin(1e-6));
  CHECK(s.certified_bound >= 1.0 - 1e-12);
}

TEST_CASE("equality constraints: elliptope completion") {
  // max y1 with y0 = a, y2 = c: a c + sqrt((1-a^2)(1-c^2))
  SdpSolution s = solve_sdp(elliptope());
  const double exact = 0.8 * 0.6 + std::sqrt((1 - 0.64) * (1 - 0.36));
  CHECK(s.status == SdpStatus::Optimal);
  CHECK(s.certified_bound >= exact - 1e-12);
  CHECK(s.certified_bound == Catch::Approx(exact).margin(1e-6));
  CHECK(s.y(0) == Catch::Approx(0.8).margin(1e-8));
  CHECK(s.y(2) == Catch::Approx(0.6).margin(1e-8));
}

TEST_CASE("inconsistent equalities are infeasible") {
  SdpProblem p = elliptope();
  p.e = Eigen::MatrixXd::Zero(2, 3);
  p.e(0, 0) = 1.0;
  p.e(1, 0) = 2.0;
  p.f = Eigen::Vector2d(0.1, 0.5);
  CHECK(solve_sdp(p).status == SdpStatus::Infeasible);

  // dependent but consistent rows are fine
  p.f = Eigen::Vector2d(0.1, 0.2);
  CHECK(solve_sdp(p).status == SdpStatus::Optimal);
}

TEST_CASE("random minimum-eigenvalue problems") {
  std::mt19937_64 rng(21);
  std::normal_distribution<double> g;
  for (int t = 0; t < 20; ++t) {
    std::vector<Eigen::MatrixXd> ms;
    double oracle = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 1 + t % 3; ++k) {
      const int n = 2 + (t + k) % 6;
      Eigen::MatrixXd m(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = g(rng);
      m = (m + m.transpose()).eval() / 2.0;
      oracle = std::min(oracle, Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m).eigenvalues()(0));
      ms.push_back(m);
    }
    SdpSolution s = solve_sdp(min_eigen_problem(ms));
    CHECK(s.status == SdpStatus::Optimal);
    CHECK(s.certified_bound >= oracle - 1e-12);
    CHECK(s.certified_bound == Catch::Approx(oracle).margin(1e-6));
  }
}

TEST_CASE("certificate stays an outer bound when stopped early") {
  MomentProblemSpec spec;
  spec.parties = local_test_parties();
  spec.level = 1;
  spec.objective = chsh_polynomial();
  MomentProblem mp = build_moment_problem(spec);
  const double tsirelson = 2.0 * std::numbers::sqrt2;
  for (int iters : {1, 2, 3, 5, 8, 200}) {
    SdpOptions o;
    o.max_iterations = iters;
    SdpSolution s = solve_sdp(mp, o);
    CHECK(s.certified_bound >= tsirelson - 1e-12);
    CHECK(s.rigor_shift >= 0.0);
    if (iters == 200) {
      CHECK(s.status == SdpStatus::Optimal);
      CHECK(s.certified_bound == Catch::Approx(tsirelson).margin(1e-6));
    }
  }
}

TEST_CASE("perturbed certificate side is repaired by the shift") {
  // A feasible moment point gives a lower bound on the max; every certified
  // bound must sit above it whatever the stopping point.
  MomentProblemSpec spec;
  spec.parties = local_test_parties();
  spec.level = 2;
  spec.equalities = table_conditions(werner_chsh_table(0.9), true);
  spec.objective = anticom_sq_polynomial(0);
  MomentProblem mp = build_moment_problem(spec);
  SdpSolution ref = solve_sdp(mp);
  REQUIRE(ref.status == SdpStatus::Optimal);
  for (int iters = 1; iters < ref.iterations; ++iters) {
    SdpOptions o;
    o.max_iterations = iters;
    SdpSolution s = solve_sdp(mp, o);
    CHECK(s.certified_bound >= ref.primal_value - 1e-9);
  }
}

TEST_CASE("min sense and json") {
  MomentProblemSpec spec;
  spec.parties = local_test_parties();
  spec.level = 1;
  spec.objective = chsh_polynomial();
  spec.sense = Sense::Min;
  SdpSolution s = solve_sdp(build_moment_problem(spec));
  CHECK(s.certified_bound <= -2.0 * std::numbers::sqrt2 + 1e-12);
  CHECK(s.certified_bound == Catch::Approx(-2.0 * std::numbers::sqrt2).margin(1e-6));
  CHECK(moment_values(s).front() == 1.0);

  nlohmann::json j = s;
  CHECK(j["status"] == "Optimal");
  s.gap = std::numeric_limits<double>::infinity();
  j = s;
  CHECK(j["gap"].is_null());
  CHECK(std::string(status_name(SdpStatus::Infeasible)) == "Infeasible");
}
