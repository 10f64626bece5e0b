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

#include "dikit/entropy.hpp"
#include "dikit/errors.hpp"
#include "dikit/quantum_model.hpp"
#include "test_support.hpp"

using namespace dikit;
using dikit::testing::max_abs;

namespace {

double table_deviation(const ProbTable& a, const ProbTable& b) {
  REQUIRE(a.size() == b.size());
  double worst = 0.0;
  for (std::size_t x = 0; x < a.size(); ++x) {
    REQUIRE(a[x].size() == b[x].size());
    for (std::size_t y = 0; y < a[x].size(); ++y) {
      REQUIRE(a[x][y].size() == b[x][y].size());
      for (std::size_t i = 0; i < a[x][y].size(); ++i)
        for (std::size_t j = 0; j < a[x][y][i].size(); ++j)
          worst = std::max(worst, std::abs(a[x][y][i][j] - b[x][y][i][j]));
    }
  }
  return worst;
}

std::vector<PVM> chsh_like() {
  return {bloch_pvm(DichotomicObservable({0, 0, 1}), "0"), bloch_pvm(DichotomicObservable({1, 0, 0}), "1")};
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

TEST_CASE("Werner states") {
  ComplexVector phi = phi_plus();
  CHECK(max_abs(werner_state(1.0).mat() - phi * phi.adjoint()) < 1e-15);
  CHECK(max_abs(werner_state(0.0).mat() - pauli::identity(4) / 4.0) < 1e-15);

  const double v = 0.99;
  RealVector ev = dikit::testing::reference_eigenvalues(werner_state(v).mat());
  CHECK(ev(3) == Catch::Approx((1 + 3 * v) / 4).margin(1e-14));
  for (int i = 0; i < 3; ++i) CHECK(ev(i) == Catch::Approx((1 - v) / 4).margin(1e-14));

  CHECK(code_of([] { werner_state(1.5); }) == ErrorCode::RangeError);
  CHECK(code_of([] { werner_state(-0.1); }) == ErrorCode::RangeError);
}

TEST_CASE("density matrix validation") {
  FactorSpace sp({2});
  ComplexMatrix bad = pauli::identity(2);
  CHECK(code_of([&] { DensityMatrix(sp, bad); }) == ErrorCode::RangeError);
  ComplexMatrix neg = ComplexMatrix::Zero(2, 2);
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  CHECK(code_of([&] { DensityMatrix(sp, neg); }) == ErrorCode::RangeError);
  ComplexMatrix nh = pauli::identity(2) / 2.0;
  nh(0, 1) = 0.3;
  CHECK(code_of([&] { DensityMatrix(sp, nh); }) == ErrorCode::NonHermitian);
  CHECK(code_of([&] { DensityMatrix(FactorSpace({3}), pauli::identity(2) / 2.0); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("Bloch PVMs") {
  PVM z = bloch_pvm(DichotomicObservable({0, 0, 1}));
  ComplexMatrix p0 = ComplexMatrix::Zero(2, 2), p1 = ComplexMatrix::Zero(2, 2);
  p0(0, 0) = 1;
  p1(1, 1) = 1;
  CHECK(max_abs(z.projectors[0] - p0) < 1e-15);
  CHECK(max_abs(z.projectors[1] - p1) < 1e-15);

  PVM x = bloch_pvm(DichotomicObservable({1, 0, 0}));
  CHECK(max_abs(x.projectors[0] - (pauli::identity(2) + pauli::x()) / 2.0) < 1e-15);

  for (double t : {0.0, 0.3, 1.1, 2.0, M_PI}) {
    PVM b = bloch_pvm(DichotomicObservable::xz_plane(t));
    b.validate();
    // |<a+|b+>|^2 = tr(P_a+ P_b+) for rank-one projectors.
    double overlap = (z.projectors[0] * b.projectors[0]).trace().real();
    CHECK(overlap == Catch::Approx((1 + std::cos(t)) / 2).margin(1e-14));
    ComplexMatrix m = DichotomicObservable::xz_plane(t).matrix();
    CHECK(max_abs(m * m - pauli::identity(2)) < 1e-10);
  }
  CHECK(code_of([] { DichotomicObservable({1, 1, 0}); }) == ErrorCode::RangeError);
}

TEST_CASE("PVM validation catches non-projective families") {
  PVM p{"bad", {pauli::identity(2) * 0.5, pauli::identity(2) * 0.5}};
  CHECK(code_of([&] { p.validate(); }) == ErrorCode::NotAPOVM);
  std::mt19937_64 rng(2);
  for (std::size_t k : {2u, 3u, 4u}) random_pvm(4, k, rng).validate();
}

TEST_CASE("purification recovers the state") {
  ComplexVector phi = phi_plus();
  DensityMatrix pure = DensityMatrix::from_pure(FactorSpace({2, 2}), phi);
  Purification pp = purify(pure);
  CHECK(pp.env_dim == 1);

  DensityMatrix mixed(FactorSpace({2}), pauli::identity(2) / 2.0);
  Purification pm = purify(mixed);
  CHECK(pm.env_dim == 2);
  CHECK(max_abs(reduced_pure_state(pm.psi, pm.space, std::vector<std::size_t>{0}) - mixed.mat()) < 1e-12);
  // Maximally entangled: the environment marginal is also maximally mixed.
  CHECK(max_abs(reduced_pure_state(pm.psi, pm.space, std::vector<std::size_t>{1}) - pauli::identity(2) / 2.0) < 1e-12);

  DensityMatrix w = werner_state(0.96);
  Purification pw = purify(w);
  CHECK(pw.env_dim == 4);
  CHECK(max_abs(reduced_pure_state(pw.psi, pw.space, std::vector<std::size_t>{0, 1}) - w.mat()) <= 1e-10);

  std::mt19937_64 rng(17);
  for (int i = 0; i < 20; ++i) {
    DensityMatrix r = random_density(FactorSpace({2, 3}), 1 + i % 6, rng);
    Purification p = purify(r, 3);
    CHECK(p.env_dim >= 3);
    CHECK(max_abs(reduced_pure_state(p.psi, p.space, std::vector<std::size_t>{0, 1}) - r.mat()) <= 1e-10);
    CHECK(std::abs(p.psi.norm() - 1.0) < 1e-12);
  }
}

TEST_CASE("Uhlmann isometry") {
  std::mt19937_64 rng(23);
  SECTION("identity case") {
    ComplexVector chi = random_pure_state(6, rng);
    ComplexMatrix w = uhlmann_isometry(chi, chi, 2);
    ComplexVector mapped = kron(ComplexMatrix(pauli::identity(2)), w) * chi;
    CHECK((mapped - chi).norm() < 1e-8);
  }
  SECTION("unitary on the purifying system") {
    for (int i = 0; i < 10; ++i) {
      ComplexVector chi = random_pure_state(8, rng);
      ComplexMatrix u = random_unitary(4, rng);
      ComplexVector phi = kron(ComplexMatrix(pauli::identity(2)), u) * chi;
      ComplexMatrix w = uhlmann_isometry(chi, phi, 2);
      CHECK((kron(ComplexMatrix(pauli::identity(2)), w) * chi - phi).norm() < 1e-8);
      CHECK(max_abs(w.adjoint() * w - ComplexMatrix::Identity(w.cols(), w.cols())) < 1e-8);
    }
  }
  SECTION("different environment sizes") {
    for (int i = 0; i < 20; ++i) {
      DensityMatrix ra = random_density(FactorSpace({2}), 2, rng);
      Purification small = purify(ra);
      // A second purification through a random isometry into a larger space.
      ComplexMatrix v = random_unitary(5, rng).leftCols(small.env_dim);
      ComplexVector phi = kron(ComplexMatrix(pauli::identity(2)), v) * small.psi;
      ComplexMatrix w = uhlmann_isometry(small.psi, phi, 2);
      CHECK((kron(ComplexMatrix(pauli::identity(2)), w) * small.psi - phi).norm() < 1e-8);
    }
  }
  SECTION("mismatched marginals") {
    ComplexVector a = ComplexVector::Zero(4), b = ComplexVector::Zero(4);
    a(0) = 1.0;
    b(3) = 1.0;
    CHECK(code_of([&] { uhlmann_isometry(a, b, 2); }) == ErrorCode::MarginalMismatch);
  }
}

TEST_CASE("Naimark dilation") {
  auto check = [](const std::vector<ComplexMatrix>& effects, double tol) {
    NaimarkDilation nd = naimark_dilate(effects);
    REQUIRE(nd.pvm.size() == effects.size());
    const auto d = effects.front().rows();
    CHECK(max_abs(nd.isometry.adjoint() * nd.isometry - ComplexMatrix::Identity(d, d)) < 1e-12);
    ComplexMatrix sum = ComplexMatrix::Zero(nd.pvm[0].rows(), nd.pvm[0].cols());
    for (std::size_t c = 0; c < effects.size(); ++c) {
      CHECK(max_abs(nd.isometry.adjoint() * nd.pvm[c] * nd.isometry - effects[c]) < tol);
      CHECK(max_abs(nd.pvm[c] * nd.pvm[c] - nd.pvm[c]) < 1e-9);
      sum += nd.pvm[c];
    }
    CHECK(max_abs(sum - ComplexMatrix::Identity(sum.rows(), sum.cols())) < 1e-9);
    return nd;
  };

  PVM z = bloch_pvm(DichotomicObservable({0, 0, 1}));
  check(z.projectors, 1e-12);

  ComplexMatrix e0 = ComplexMatrix::Zero(2, 2);
  e0(0, 0) = 0.7;
  e0 += 0.3 * pauli::identity(2) / 2.0;
  check({e0, pauli::identity(2) - e0}, 1e-10);

  std::vector<ComplexMatrix> trine;
  for (int k = 0; k < 3; ++k) {
    double t = 2.0 * M_PI * k / 3.0;
    ComplexMatrix p = bloch_pvm(DichotomicObservable::xz_plane(t)).projectors[0];
    trine.push_back(p * (2.0 / 3.0));
  }
  NaimarkDilation nd = check(trine, 1e-10);
  CHECK(nd.dim_k == 3);

  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> outcomes(2, 4);
  for (int i = 0; i < 100; ++i) {
    std::size_t n = outcomes(rng);
    std::vector<ComplexMatrix> raw;
    ComplexMatrix total = ComplexMatrix::Zero(3, 3);
    for (std::size_t c = 0; c < n; ++c) {
      ComplexMatrix g = dikit::testing::random_hermitian(3, rng);
      raw.push_back(g * g);
      total += raw.back();
    }
    ComplexMatrix inv_sqrt = apply_spectral(total, [](double l) { return 1.0 / std::sqrt(l); });
    std::vector<ComplexMatrix> effects;
    for (auto& r : raw) effects.push_back(hermitize(inv_sqrt * r * inv_sqrt));
    check(effects, 1e-9);
  }

  CHECK(code_of([] { naimark_dilate({pauli::identity(2) * 0.4, pauli::identity(2) * 0.4}); }) ==
        ErrorCode::NotAPOVM);
}

TEST_CASE("routed model translation preserves statistics and entropy") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    RoutedModel m = random_routed_model(rng);
    TranslatedModel t = translate_routed_model(m);
    CHECK(table_deviation(routed_long_range_stats(m), translated_long_range_stats(t)) <= 1e-8);
    CHECK(table_deviation(routed_short_range_stats(m), translated_short_range_stats(t)) <= 1e-8);

    const std::vector<std::size_t> env_l{3}, env_t{2, 3};
    DensityMatrix chi_ae(FactorSpace({t.space.dim(0), t.chi_l.env_dim}),
                         reduced_pure_state(t.chi_l.psi, t.chi_l.space, std::vector<std::size_t>{0, 3}));
    DensityMatrix psi_ae(FactorSpace({t.space.dim(0), t.space.dim(2) * t.space.dim(3)}),
                         reduced_pure_state(t.psi, t.space, std::vector<std::size_t>{0, 2, 3}));
    CHECK(std::abs(cond_entropy(chi_ae, 1) - cond_entropy(psi_ae, 1)) <= 1e-7);

    double h_l = measured_cond_entropy(t.chi_l.psi, t.chi_l.space, 0, m.alice[0], env_l);
    double h_t = measured_cond_entropy(t.psi, t.space, 0, t.alice[0], env_t);
    CHECK(std::abs(h_l - h_t) <= 1e-7);
  }
}

TEST_CASE("translation with equal states and a trivial tester") {
  DensityMatrix w = werner_state(0.8);
  DensityMatrix t0(FactorSpace({2}), [] {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 0) = 1;
    return m;
  }());
  DensityMatrix prod(FactorSpace({2, 2, 2}), kron(w.mat(), t0.mat()));
  RoutedModel m{prod, prod, chsh_like(), chsh_like(), {PVM{"t", {pauli::identity(2)}}}};
  TranslatedModel t = translate_routed_model(m);
  CHECK(table_deviation(routed_long_range_stats(m), translated_long_range_stats(t)) <= 1e-10);
  CHECK(table_deviation(routed_short_range_stats(m), translated_short_range_stats(t)) <= 1e-10);
}

TEST_CASE("routed model validation") {
  std::mt19937_64 rng(1);
  RoutedModel m = random_routed_model(rng);
  DensityMatrix other = random_density(m.rho_s.space(), 8, rng);
  RoutedModel bad{m.rho_l, other, m.alice, m.bob, m.tester};
  CHECK(code_of([&] { translate_routed_model(bad); }) == ErrorCode::MarginalMismatch);
}
