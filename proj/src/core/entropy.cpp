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

#include "dikit/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dikit/errors.hpp"

namespace dikit {

namespace {

double entropy_of_spectrum(const RealVector& ev) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    double l = ev(i);
    if (l > kEntropyClip) s -= l * std::log2(l);
  }
  return s;
}

std::vector<std::size_t> complement(std::size_t n, std::span<const std::size_t> idx) {
  std::vector<std::size_t> out;
  for (std::size_t f = 0; f < n; ++f)
    if (std::find(idx.begin(), idx.end(), f) == idx.end()) out.push_back(f);
  return out;
}

}  // namespace

double binary_entropy(double q) {
  if (!(q >= 0.0 && q <= 1.0)) fail(ErrorCode::RangeError, "binary entropy argument must lie in [0, 1]");
  if (q == 0.0 || q == 1.0) return 0.0;
  return -q * std::log2(q) - (1.0 - q) * std::log2(1.0 - q);
}

double shannon_entropy(std::span<const double> probs) {
  double s = 0.0;
  for (double p : probs)
    if (p > kEntropyClip) s -= p * std::log2(p);
  return s;
}

double von_neumann_raw(const ComplexMatrix& m) { return entropy_of_spectrum(eigvalsh(hermitize(m))); }

double von_neumann(const DensityMatrix& rho) { return entropy_of_spectrum(eigvalsh(rho.mat())); }

double cond_entropy(const DensityMatrix& rho, std::span<const std::size_t> condition_on) {
  for (std::size_t f : condition_on)
    if (f >= rho.space().num_factors()) fail(ErrorCode::BadFactorIndex, "conditioning factor out of range");
  if (rho.space().num_factors() < 2) fail(ErrorCode::BadFactorIndex, "conditional entropy needs at least two factors");
  double joint = von_neumann(rho);
  double cond = von_neumann_raw(partial_trace(rho.mat(), rho.space(), condition_on));
  return joint - cond;
}

double cond_entropy(const DensityMatrix& rho, std::size_t condition_on) {
  std::size_t c[1] = {condition_on};
  return cond_entropy(rho, c);
}

double CQState::conditional_entropy() const {
  if (outcome_probs.size() != conditional_states.size() || conditional_states.empty())
    fail(ErrorCode::ShapeError, "CQ state needs one conditional state per outcome");
  const Eigen::Index d = conditional_states.front().rows();
  ComplexMatrix avg = ComplexMatrix::Zero(d, d);
  double inner = 0.0;
  for (std::size_t a = 0; a < outcome_probs.size(); ++a) {
    double p = outcome_probs[a];
    if (p <= kEntropyClip) continue;
    inner += p * von_neumann_raw(conditional_states[a]);
    avg += p * conditional_states[a];
  }
  return shannon_entropy(outcome_probs) + inner - von_neumann_raw(avg);
}

CQState measure_into_cq(const ComplexVector& psi, const FactorSpace& space, std::size_t measured,
                        const PVM& pvm, std::span<const std::size_t> condition) {
  if (measured >= space.num_factors()) fail(ErrorCode::BadFactorIndex, "measured factor out of range");
  if (pvm.dim() != space.dim(measured)) fail(ErrorCode::DimensionMismatch, "PVM does not act on the measured factor");
  std::vector<std::size_t> keep(condition.begin(), condition.end());
  if (std::find(keep.begin(), keep.end(), measured) != keep.end())
    fail(ErrorCode::BadFactorIndex, "cannot condition on the measured factor");
  keep.push_back(measured);
  std::sort(keep.begin(), keep.end());
  FactorSpace sub = space.subspace(keep);
  ComplexMatrix rho = reduced_pure_state(psi, space, keep);
  const std::size_t pos = static_cast<std::size_t>(std::find(keep.begin(), keep.end(), measured) - keep.begin());
  std::vector<std::size_t> rest = complement(keep.size(), std::vector<std::size_t>{pos});
  PVM lifted = embed_pvm(pvm, sub, pos);

  CQState cq;
  for (const auto& p : lifted.projectors) {
    ComplexMatrix branch = partial_trace(p * rho * p, sub, rest);
    double prob = branch.trace().real();
    cq.outcome_probs.push_back(std::max(prob, 0.0));
    cq.conditional_states.push_back(prob > kEntropyClip ? ComplexMatrix(branch / prob) : branch);
  }
  return cq;
}

double measured_cond_entropy(const ComplexVector& psi, const FactorSpace& space, std::size_t measured,
                             const PVM& pvm, std::span<const std::size_t> condition) {
  return measure_into_cq(psi, space, measured, pvm, condition).conditional_entropy();
}

double classical_cond_entropy(const std::vector<std::vector<double>>& joint) {
  std::vector<double> flat, marg_b;
  for (const auto& row : joint) {
    if (marg_b.size() < row.size()) marg_b.resize(row.size(), 0.0);
    for (std::size_t b = 0; b < row.size(); ++b) {
      flat.push_back(row[b]);
      marg_b[b] += row[b];
    }
  }
  return shannon_entropy(flat) - shannon_entropy(marg_b);
}

double devetak_winter(double h_a_given_e, double h_a_given_b) { return h_a_given_e - h_a_given_b; }

}  // namespace dikit
