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

#ifndef DIKIT_HERMITIAN_HPP
#define DIKIT_HERMITIAN_HPP

// Dense complex-matrix substrate shared by every other module.
//
// Tensor-factor convention: for a space H_0 (x) H_1 (x) ... (x) H_{k-1} the
// basis index is row-major, i.e. the leftmost factor is the most significant
// digit. kron(a, b) therefore has a as the outer (block) factor.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace dikit {

using cplx = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

inline constexpr double kHermitianTol = 1e-10;

/// Ordered subsystem dimensions of a tensor-product space.
class FactorSpace {
 public:
  FactorSpace() = default;
  explicit FactorSpace(std::vector<std::size_t> factor_dims);

  const std::vector<std::size_t>& factor_dims() const noexcept { return dims_; }
  std::size_t num_factors() const noexcept { return dims_.size(); }
  std::size_t total_dim() const noexcept { return total_; }
  std::size_t dim(std::size_t factor) const;

  /// Space made of the listed factors, in ascending factor order.
  FactorSpace subspace(std::span<const std::size_t> keep) const;

  friend bool operator==(const FactorSpace&, const FactorSpace&) = default;

 private:
  std::vector<std::size_t> dims_;
  std::size_t total_ = 1;
};

struct EighResult {
  RealVector eigenvalues;  // ascending
  ComplexMatrix eigenvectors;  // columns, unitary
};

/// Maximum entrywise deviation |m - m^dagger|.
double hermiticity_defect(const ComplexMatrix& m);
bool is_hermitian(const ComplexMatrix& m, double tol = kHermitianTol);

/// (m + m^dagger) / 2. Use after long chains of products that accumulate
/// round-off in the anti-Hermitian part.
ComplexMatrix hermitize(const ComplexMatrix& m);

/// Eigendecomposition of a Hermitian matrix via Householder reduction to a
/// real symmetric tridiagonal matrix followed by implicit-shift QL.
/// Throws NonHermitian / NoConvergence.
EighResult eigh(const ComplexMatrix& m);
RealVector eigvalsh(const ComplexMatrix& m);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix kron_all(std::span<const ComplexMatrix> factors);
ComplexVector kron(const ComplexVector& a, const ComplexVector& b);

/// Trace out every factor not listed in `keep`. The kept factors appear in
/// ascending order in the result.
ComplexMatrix partial_trace(const ComplexMatrix& m, const FactorSpace& space,
                            std::span<const std::size_t> keep);
ComplexMatrix partial_trace(const ComplexMatrix& m, const FactorSpace& space,
                            std::initializer_list<std::size_t> keep);

/// Largest absolute eigenvalue of a Hermitian matrix.
double op_norm(const ComplexMatrix& m);

ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

/// f(m) for Hermitian m applied through the spectrum.
template <class F>
ComplexMatrix apply_spectral(const ComplexMatrix& m, F&& f) {
  EighResult e = eigh(m);
  RealVector fv = e.eigenvalues.unaryExpr(f);
  return e.eigenvectors * fv.asDiagonal() * e.eigenvectors.adjoint();
}

/// Square root of a positive semidefinite matrix (negative round-off clipped).
ComplexMatrix psd_sqrt(const ComplexMatrix& m);

/// Orthonormal basis (columns) for the orthogonal complement of the column
/// span of `basis` (columns assumed orthonormal) inside C^dim.
ComplexMatrix orthonormal_complement(const ComplexMatrix& basis, std::size_t dim);

namespace pauli {
ComplexMatrix identity(std::size_t d = 2);
ComplexMatrix x();
ComplexMatrix y();
ComplexMatrix z();
}  // namespace pauli

}  // namespace dikit

#endif  // DIKIT_HERMITIAN_HPP
