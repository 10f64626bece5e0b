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

#include <random>

#include "dikit/bell_stats.hpp"
#include "dikit/entropy.hpp"
#include "dikit/errors.hpp"
#include "test_support.hpp"

using namespace dikit;
using dikit::testing::ref_h;

TEST_CASE("binary entropy") {
  CHECK(binary_entropy(0.0) == 0.0);
  CHECK(binary_entropy(1.0) == 0.0);
  CHECK(binary_entropy(0.5) == Catch::Approx(1.0).margin(1e-15));
  CHECK(binary_entropy(0.02) == Catch::Approx(0.141441).margin(1e-6));
  for (double q = 0.001; q < 1.0; q += 0.0137) CHECK(std::abs(binary_entropy(q) - ref_h(q)) < 1e-14);
  double prev = 0.0;
  for (int i = 1; i <= 500; ++i) {
    double h = binary_entropy(0.5 * i / 500.0);
    CHECK(h > prev);
    prev = h;
  }
  CHECK_THROWS_AS(binary_entropy(1.1), Error);
  CHECK_THROWS_AS(binary_entropy(-1e-3), Error);
}

TEST_CASE("von Neumann entropy") {
  ComplexVector phi = phi_plus();
  CHECK(von_neumann(DensityMatrix::from_pure(FactorSpace({2, 2}), phi)) == Catch::Approx(0.0).margin(1e-12));
  CHECK(von_neumann(DensityMatrix(FactorSpace({2}), pauli::identity(2) / 2.0)) == Catch::Approx(1.0));
  const double v = 0.99;
  const double l1 = (1 + 3 * v) / 4, l2 = (1 - v) / 4;
  double expect = -l1 * std::log2(l1) - 3 * l2 * std::log2(l2);
  CHECK(von_neumann(werner_state(v)) == Catch::Approx(expect).margin(1e-12));

  std::mt19937_64 rng(9);
  for (int i = 0; i < 20; ++i) {
    DensityMatrix r = random_density(FactorSpace({3, 2}), 1 + i % 6, rng);
    CHECK(std::abs(von_neumann(r) - dikit::testing::reference_entropy(r.mat())) < 1e-10);
  }
}

TEST_CASE("conditional entropy") {
  std::mt19937_64 rng(10);
  DensityMatrix ra = random_density(FactorSpace({2}), 2, rng);
  DensityMatrix rb = random_density(FactorSpace({3}), 3, rng);
  DensityMatrix prod(FactorSpace({2, 3}), kron(ra.mat(), rb.mat()));
  CHECK(cond_entropy(prod, 1) == Catch::Approx(von_neumann(ra)).margin(1e-10));

  ComplexVector phi = phi_plus();
  CHECK(cond_entropy(DensityMatrix::from_pure(FactorSpace({2, 2}), phi), 1) == Catch::Approx(-1.0).margin(1e-12));

  // Werner(0.96): H(A|B) = -H(A|E) on the purification.
  DensityMatrix w = werner_state(0.96);
  Purification p = purify(w);
  DensityMatrix ae(FactorSpace({2, p.env_dim}), reduced_pure_state(p.psi, p.space, std::vector<std::size_t>{0, 2}));
  CHECK(cond_entropy(w, 1) == Catch::Approx(-cond_entropy(ae, 1)).margin(1e-10));

  CHECK_THROWS_AS(cond_entropy(w, 2), Error);
}

TEST_CASE("duality on random pure tripartite states") {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<int> dim(2, 3);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    std::size_t da = dim(rng), db = dim(rng), de = dim(rng);
    FactorSpace sp({da, db, de});
    ComplexVector psi = random_pure_state(da * db * de, rng);
    DensityMatrix ab(FactorSpace({da, db}), reduced_pure_state(psi, sp, std::vector<std::size_t>{0, 1}));
    DensityMatrix ae(FactorSpace({da, de}), reduced_pure_state(psi, sp, std::vector<std::size_t>{0, 2}));
    worst = std::max(worst, std::abs(cond_entropy(ae, 1) + cond_entropy(ab, 1)));
  }
  CHECK(worst <= 1e-9);
}

TEST_CASE("measured conditional entropy") {
  const std::vector<std::size_t> on_e{2}, on_b{1};
  PVM z = bloch_pvm(DichotomicObservable({0, 0, 1}));
  PVM x = bloch_pvm(DichotomicObservable({1, 0, 0}));

  // |0>|0> product: deterministic Z outcome.
  ComplexVector zero = ComplexVector::Zero(4);
  zero(0) = 1.0;
  Purification prod = purify(DensityMatrix::from_pure(FactorSpace({2, 2}), zero));
  CHECK(measured_cond_entropy(prod.psi, prod.space, 0, z, on_e) == Catch::Approx(0.0).margin(1e-12));

  Purification ideal = purify(werner_state(1.0));
  CHECK(measured_cond_entropy(ideal.psi, ideal.space, 0, z, on_e) == Catch::Approx(1.0).margin(1e-12));

  Purification noisy = purify(werner_state(0.96));
  double hze = measured_cond_entropy(noisy.psi, noisy.space, 0, z, on_e);
  CHECK(hze >= 1.0 - binary_entropy(0.02) - 1e-9);

  CQState cq = measure_into_cq(noisy.psi, noisy.space, 0, z, on_e);
  double total = 0.0;
  for (double pa : cq.outcome_probs) total += pa;
  CHECK(total == Catch::Approx(1.0).margin(1e-10));
  CHECK(cq.conditional_entropy() == Catch::Approx(hze).margin(1e-10));

  CHECK_THROWS_AS(measured_cond_entropy(noisy.psi, noisy.space, 0, z, std::vector<std::size_t>{0}), Error);
}

TEST_CASE("uncertainty relation holds for explicit qubit models") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const std::vector<std::size_t> on_e{2}, on_b{1};
  for (int i = 0; i < 40; ++i) {
    double theta = M_PI * u(rng);
    double v = u(rng);
    PVM za = bloch_pvm(DichotomicObservable({0, 0, 1}));
    PVM xa = bloch_pvm(DichotomicObservable::xz_plane(theta));
    Purification p = purify(werner_state(v));
    double hz_e = measured_cond_entropy(p.psi, p.space, 0, za, on_e);
    double hx_b = measured_cond_entropy(p.psi, p.space, 0, xa, on_b);
    double c = (1 + std::abs(std::cos(theta))) / 2;
    CHECK(hz_e + hx_b >= -std::log2(c) - 1e-9);
  }
}

TEST_CASE("classical quantities") {
  CHECK(devetak_winter(1.0, 0.0) == 1.0);
  CHECK(devetak_winter(0.7171, 0.1414) == Catch::Approx(0.5757).margin(1e-12));
  CHECK(devetak_winter(0.3, 0.3) == 0.0);

  std::vector<double> p{0.25, 0.25, 0.5};
  CHECK(shannon_entropy(p) == Catch::Approx(1.5));
  // H(A|B) for a binary symmetric channel with flip q is h(q).
  const double q = 0.07;
  std::vector<std::vector<double>> joint{{(1 - q) / 2, q / 2}, {q / 2, (1 - q) / 2}};
  CHECK(classical_cond_entropy(joint) == Catch::Approx(ref_h(q)).margin(1e-12));
}
