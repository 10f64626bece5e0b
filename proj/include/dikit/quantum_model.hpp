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

#ifndef DIKIT_QUANTUM_MODEL_HPP
#define DIKIT_QUANTUM_MODEL_HPP

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "dikit/hermitian.hpp"

namespace dikit {

inline constexpr double kStateTol = 1e-10;

/// Unit-trace positive semidefinite operator on a tensor-factor space.
class DensityMatrix {
 public:
  /// Validates PSD (min eigenvalue >= -1e-10) and unit trace; hermitizes.
  DensityMatrix(FactorSpace space, const ComplexMatrix& mat);

  static DensityMatrix from_pure(FactorSpace space, const ComplexVector& psi);

  const FactorSpace& space() const noexcept { return space_; }
  const ComplexMatrix& mat() const noexcept { return mat_; }
  std::size_t dim() const noexcept { return space_.total_dim(); }

  DensityMatrix reduce(std::span<const std::size_t> keep) const;
  DensityMatrix reduce(std::initializer_list<std::size_t> keep) const;

 private:
  FactorSpace space_;
  ComplexMatrix mat_;
};

/// Projective measurement for one input: idempotent, orthogonal projectors
/// summing to the identity.
struct PVM {
  std::string input_label;
  std::vector<ComplexMatrix> projectors;

  std::size_t dim() const { return projectors.empty() ? 0 : static_cast<std::size_t>(projectors[0].rows()); }
  std::size_t outcomes() const { return projectors.size(); }
  /// Throws NotAPOVM when any projector condition fails at 1e-10.
  void validate() const;
};

/// +-1 valued qubit observable bloch . sigma.
class DichotomicObservable {
 public:
  explicit DichotomicObservable(std::array<double, 3> bloch);
  /// Observable cos(theta) Z + sin(theta) X.
  static DichotomicObservable xz_plane(double theta);

  const std::array<double, 3>& bloch() const noexcept { return bloch_; }
  ComplexMatrix matrix() const;

 private:
  std::array<double, 3> bloch_;
};

/// |Phi+> = (|00> + |11>)/sqrt(2).
ComplexVector phi_plus();

/// v |Phi+><Phi+| + (1 - v) I/4.
DensityMatrix werner_state(double visibility);

/// Projectors (I + a.sigma)/2 (outcome 0) and (I - a.sigma)/2 (outcome 1).
PVM bloch_pvm(const DichotomicObservable& obs, std::string label = {});

/// PVM lifted by identities to act on factor `factor` of `space`.
PVM embed_pvm(const PVM& local, const FactorSpace& space, std::size_t factor);

/// Purification sum_i sqrt(lambda_i) |e_i>|i> with environment dimension equal
/// to the numerical rank of rho (eigenvalues > 1e-12).
struct Purification {
  ComplexVector psi;     // on system (x) environment
  FactorSpace space;     // rho's factors followed by the environment factor
  std::size_t env_dim = 0;
};
Purification purify(const DensityMatrix& rho, std::size_t min_env_dim = 0);

/// Reduced state on the listed factors of a pure vector psi on `space`.
ComplexMatrix reduced_pure_state(const ComplexVector& psi, const FactorSpace& space,
                                 std::span<const std::size_t> keep);

/// Isometry W : R1 -> R2 with (1_A (x) W) chi = phi, given two pure states on
/// A (x) R1 and A (x) R2 whose A-marginals agree within 1e-9.
ComplexMatrix uhlmann_isometry(const ComplexVector& chi, const ComplexVector& phi, std::size_t dim_a);

/// Naimark dilation of a POVM on H. V maps |phi> to |phi>|0> in H (x) K and
/// the returned PVM on H (x) K satisfies V^dagger Pi_c V = effect_c.
struct NaimarkDilation {
  ComplexMatrix isometry;            // (dim_h * dim_k) x dim_h
  std::vector<ComplexMatrix> pvm;    // projectors on H (x) K
  std::size_t dim_k = 0;
};
NaimarkDilation naimark_dilate(const std::vector<ComplexMatrix>& effects);

/// Routed model: long-range and short-range states on A (x) B (x) T with equal
/// A-marginals, with local PVMs per input.
struct RoutedModel {
  DensityMatrix rho_l;
  DensityMatrix rho_s;
  std::vector<PVM> alice;   // on H_A
  std::vector<PVM> bob;     // on H_B
  std::vector<PVM> tester;  // on H_T
};

/// Throws MarginalMismatch if the A-marginals differ by more than 1e-9.
void validate_routed_model(const RoutedModel& m);

/// Single-state model reproducing both statistics of a routed model: a pure
/// state on A (x) B~ (x) E' with B~ = B (x) T and E' = E (x) K.
struct TranslatedModel {
  ComplexVector psi;
  FactorSpace space;                       // {dA, dB*dT, dE, dK}
  std::vector<PVM> alice;                  // on A
  std::vector<PVM> bob;                    // on B~
  std::vector<std::vector<ComplexMatrix>> tester;  // per z, on B~ (x) E (x) K
  Purification chi_l;                      // purification of rho_L used for H(A|E)
};
TranslatedModel translate_routed_model(const RoutedModel& m);

/// p(a,b|x,y) tables indexed [x][y][a][b].
using ProbTable = std::vector<std::vector<std::vector<std::vector<double>>>>;

ProbTable routed_long_range_stats(const RoutedModel& m);
ProbTable routed_short_range_stats(const RoutedModel& m);
ProbTable translated_long_range_stats(const TranslatedModel& t);
ProbTable translated_short_range_stats(const TranslatedModel& t);

// Random instances for property tests and the equivalence check.
ComplexMatrix random_unitary(std::size_t dim, std::mt19937_64& rng);
ComplexVector random_pure_state(std::size_t dim, std::mt19937_64& rng);
DensityMatrix random_density(const FactorSpace& space, std::size_t rank, std::mt19937_64& rng);
PVM random_pvm(std::size_t dim, std::size_t outcomes, std::mt19937_64& rng, std::string label = {});
/// Two-outcome observable U Z' U^dagger with a random +-1 spectrum of mixed signs.
ComplexMatrix random_involution(std::size_t dim, std::mt19937_64& rng);
/// Qubit-per-factor routed model with equal A-marginals.
RoutedModel random_routed_model(std::mt19937_64& rng);

}  // namespace dikit

#endif  // DIKIT_QUANTUM_MODEL_HPP
