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

#ifndef DIKIT_ENTROPY_HPP
#define DIKIT_ENTROPY_HPP

// Entropic quantities, all in bits.

#include <span>
#include <vector>

#include "dikit/hermitian.hpp"
#include "dikit/quantum_model.hpp"

namespace dikit {

/// Eigenvalues below this are treated as exact zeros before taking logs.
inline constexpr double kEntropyClip = 1e-14;

double binary_entropy(double q);
double shannon_entropy(std::span<const double> probs);

double von_neumann(const DensityMatrix& rho);
/// Same for a raw PSD matrix whose trace need not be one (used on
/// subnormalized conditional states).
double von_neumann_raw(const ComplexMatrix& m);

/// S(rest, condition) - S(condition), where the conditioned system is every
/// factor not listed in `condition_on`.
double cond_entropy(const DensityMatrix& rho, std::span<const std::size_t> condition_on);
double cond_entropy(const DensityMatrix& rho, std::size_t condition_on);

/// Classical-quantum state sum_a p_a |a><a| (x) rho_{X|a}.
struct CQState {
  std::vector<double> outcome_probs;
  std::vector<ComplexMatrix> conditional_states;  // normalized, one per outcome

  /// H(Z|X) = H(p) + sum_a p_a S(rho_{X|a}) - S(sum_a p_a rho_{X|a}).
  double conditional_entropy() const;
};

/// Measures `pvm` on factor `measured` of the pure state psi and keeps the
/// factors `condition` as quantum side information.
CQState measure_into_cq(const ComplexVector& psi, const FactorSpace& space, std::size_t measured,
                        const PVM& pvm, std::span<const std::size_t> condition);

/// H(Z_A | X) for the outcome Z_A of `pvm` on factor `measured`, conditioned
/// on the listed factors of the pure state psi.
double measured_cond_entropy(const ComplexVector& psi, const FactorSpace& space, std::size_t measured,
                             const PVM& pvm, std::span<const std::size_t> condition);

/// H(A|B) of a classical joint distribution joint[a][b].
double classical_cond_entropy(const std::vector<std::vector<double>>& joint);

/// r >= H(A|E) - H(A|B). May be negative.
double devetak_winter(double h_a_given_e, double h_a_given_b);

}  // namespace dikit

#endif  // DIKIT_ENTROPY_HPP
