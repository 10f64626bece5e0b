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

#include "dikit/errors.hpp"
#include "dikit/hermitian.hpp"
#include "dikit/quantum_model.hpp"
#include "test_support.hpp"

using namespace dikit;
using dikit::testing::max_abs;
using dikit::testing::random_hermitian;

TEST_CASE("eigh on trivial inputs") {
  EighResult id = eigh(pauli::identity(2));
  CHECK(id.eigenvalues(0) == Catch::Approx(1.0));
  CHECK(id.eigenvalues(1) == Catch::Approx(1.0));
  CHECK(max_abs(id.eigenvectors - pauli::identity(2)) < 1e-12);

  RealVector z = eigvalsh(pauli::z());
  CHECK(z(0) == Catch::Approx(-1.0));
  CHECK(z(1) == Catch::Approx(1.0));

  ComplexMatrix one(1, 1);
  one(0, 0) = 3.5;
  CHECK(eigvalsh(one)(0) == 3.5);
}

TEST_CASE("eigh reconstructs random Hermitian matrices") {
  std::mt19937_64 rng(11);
  for (std::size_t n : {2u, 3u, 5u, 8u, 13u, 32u, 64u}) {
    for (int rep = 0; rep < 4; ++rep) {
      ComplexMatrix m = random_hermitian(n, rng);
      EighResult e = eigh(m);
      ComplexMatrix v = e.eigenvectors;
      CHECK(max_abs(v * e.eigenvalues.asDiagonal() * v.adjoint() - m) < 1e-10);
      CHECK(max_abs(v.adjoint() * v - ComplexMatrix::Identity(n, n)) < 1e-10);
      for (Eigen::Index i = 1; i < e.eigenvalues.size(); ++i) CHECK(e.eigenvalues(i - 1) <= e.eigenvalues(i));
      CHECK((e.eigenvalues - dikit::testing::reference_eigenvalues(m)).cwiseAbs().maxCoeff() < 1e-10);
    }
  }
}

TEST_CASE("eigh handles degenerate and already-diagonal spectra") {
  std::mt19937_64 rng(5);
  ComplexMatrix u = random_unitary(6, rng);
  RealVector d(6);
  d << -1, -1, 0, 2, 2, 2;
  ComplexMatrix m = u * d.asDiagonal() * u.adjoint();
  m = hermitize(m);
  EighResult e = eigh(m);
  CHECK((e.eigenvalues - d).cwiseAbs().maxCoeff() < 1e-10);
  CHECK(max_abs(e.eigenvectors * e.eigenvalues.asDiagonal() * e.eigenvectors.adjoint() - m) < 1e-10);

  ComplexMatrix diag = ComplexMatrix::Zero(4, 4);
  diag.diagonal() << 3, -2, 0, 1;
  CHECK((eigvalsh(diag) - RealVector{{-2, 0, 1, 3}}).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("eigh rejects non-Hermitian input") {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 1) = 1.0;
  try {
    eigh(m);
    FAIL("expected NonHermitian");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonHermitian);
  }
}

TEST_CASE("hermitize removes small drift") {
  std::mt19937_64 rng(3);
  ComplexMatrix m = random_hermitian(4, rng);
  m(0, 1) += cplx(1e-9, 0);
  CHECK_FALSE(is_hermitian(m, 1e-12));
  CHECK(is_hermitian(hermitize(m), 1e-15));
}

TEST_CASE("kron follows the row-major convention") {
  CHECK(max_abs(kron(pauli::identity(2), pauli::identity(2)) - pauli::identity(4)) == 0.0);
  ComplexMatrix zi = kron(pauli::z(), pauli::identity(2));
  ComplexMatrix expect = ComplexMatrix::Zero(4, 4);
  expect.diagonal() << 1, 1, -1, -1;
  CHECK(max_abs(zi - expect) == 0.0);

  ComplexVector phi = phi_plus();
  CHECK((kron(pauli::x(), pauli::x()) * phi - phi).norm() < 1e-15);

  std::mt19937_64 rng(8);
  ComplexMatrix a = random_hermitian(2, rng), b = random_hermitian(3, rng);
  ComplexMatrix ab = kron(a, b);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) CHECK(ab(i * 3 + k, j * 3 + l) == a(i, j) * b(k, l));

  ComplexVector e1 = ComplexVector::Unit(2, 1), e2 = ComplexVector::Unit(3, 2);
  CHECK(kron(e1, e2)(5) == cplx(1.0, 0.0));
}

TEST_CASE("partial trace") {
  std::mt19937_64 rng(21);
  FactorSpace sp({2, 3});
  ComplexMatrix x = random_hermitian(2, rng), y = random_hermitian(3, rng);
  ComplexMatrix xy = kron(x, y);
  CHECK(max_abs(partial_trace(xy, sp, {0}) - x * y.trace()) < 1e-12);
  CHECK(max_abs(partial_trace(xy, sp, {1}) - y * x.trace()) < 1e-12);
  ComplexMatrix all = partial_trace(xy, sp, std::span<const std::size_t>{});
  REQUIRE(all.rows() == 1);
  CHECK(std::abs(all(0, 0) - xy.trace()) < 1e-12);

  ComplexVector phi = phi_plus();
  ComplexMatrix bell = phi * phi.adjoint();
  CHECK(max_abs(partial_trace(bell, FactorSpace({2, 2}), {0}) - pauli::identity(2) / 2.0) < 1e-15);

  // Werner marginal by explicit index summation.
  ComplexMatrix w = werner_state(0.9).mat();
  ComplexMatrix manual = ComplexMatrix::Zero(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) manual(i, j) += w(2 * i + k, 2 * j + k);
  CHECK(max_abs(manual - pauli::identity(2) / 2.0) < 1e-15);
  CHECK(max_abs(partial_trace(w, FactorSpace({2, 2}), {0}) - manual) < 1e-15);
}

TEST_CASE("partial trace keeps factor order and is linear") {
  std::mt19937_64 rng(4);
  FactorSpace sp({2, 3, 2});
  ComplexMatrix a = random_hermitian(2, rng), b = random_hermitian(3, rng), c = random_hermitian(2, rng);
  std::vector<ComplexMatrix> f{a, b, c};
  ComplexMatrix abc = kron_all(f);
  ComplexMatrix ac = partial_trace(abc, sp, {0, 2});
  CHECK(max_abs(ac - kron(a, c) * b.trace()) < 1e-11);
  ComplexMatrix ca = partial_trace(abc, sp, {2, 0});
  CHECK(max_abs(ca - ac) < 1e-14);  // kept factors come back in ascending order

  ComplexMatrix m1 = random_hermitian(12, rng), m2 = random_hermitian(12, rng);
  ComplexMatrix lhs = partial_trace(2.0 * m1 - m2, sp, {1});
  ComplexMatrix rhs = 2.0 * partial_trace(m1, sp, {1}) - partial_trace(m2, sp, {1});
  CHECK(max_abs(lhs - rhs) < 1e-12);
  CHECK(std::abs(partial_trace(m1, sp, {1}).trace() - m1.trace()) < 1e-12);
}

TEST_CASE("partial trace index errors") {
  FactorSpace sp({2, 2});
  ComplexMatrix m = ComplexMatrix::Identity(4, 4);
  auto code_of = [&](std::initializer_list<std::size_t> keep) {
    try {
      partial_trace(m, sp, keep);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::ConfigError;
  };
  CHECK(code_of({2}) == ErrorCode::BadFactorIndex);
  CHECK(code_of({0, 0}) == ErrorCode::BadFactorIndex);
  CHECK_THROWS_AS(sp.dim(5), Error);
}

TEST_CASE("op_norm and the anticommutator identity") {
  CHECK(op_norm(pauli::z()) == Catch::Approx(1.0));
  CHECK(op_norm(ComplexMatrix::Zero(3, 3)) == 0.0);

  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> ang(0.0, M_PI);
  for (int i = 0; i < 50; ++i) {
    double t = ang(rng);
    ComplexMatrix a = pauli::z();
    ComplexMatrix b = DichotomicObservable::xz_plane(t).matrix();
    CHECK(std::abs(op_norm(anticommutator(a, b)) - 2.0 * std::abs(std::cos(t))) < 1e-10);
  }

  std::uniform_int_distribution<int> dim(2, 8);
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    std::size_t d = dim(rng);
    ComplexMatrix a = random_involution(d, rng), b = random_involution(d, rng);
    ComplexMatrix ac = anticommutator(a, b), cm = commutator(a, b);
    worst = std::max(worst, max_abs(ac * ac - cm * cm - 4.0 * ComplexMatrix::Identity(d, d)));
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("psd_sqrt and orthonormal complement") {
  std::mt19937_64 rng(12);
  ComplexMatrix g = random_hermitian(5, rng);
  ComplexMatrix p = g * g;
  ComplexMatrix r = psd_sqrt(p);
  CHECK(max_abs(r * r - p) < 1e-9);

  ComplexMatrix u = random_unitary(5, rng);
  ComplexMatrix basis = u.leftCols(2);
  ComplexMatrix comp = orthonormal_complement(basis, 5);
  REQUIRE(comp.cols() == 3);
  CHECK(max_abs(comp.adjoint() * comp - ComplexMatrix::Identity(3, 3)) < 1e-10);
  CHECK(max_abs(basis.adjoint() * comp) < 1e-10);
}
