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

#ifndef DIKIT_NPO_SDP_HPP
#define DIKIT_NPO_SDP_HPP

// Dense primal-dual interior point for block-diagonal SDPs in the form
//
//   (Y)  max  b.y          s.t.  S = C - sum_i y_i A_i  >= 0,   E y = f
//   (X)  min  <C,X> + f.l  s.t.  <A_i, X> + (E^T l)_i = b_i,     X >= 0
//
// HKM search direction with Mehrotra predictor-corrector. For a moment
// problem the Y side carries the moments and the X side certifies: any
// X >= 0 and l bound every feasible y by <C,X> + f.l + |r| |y|, r being the
// X-side residual, so the reported outer bound stays valid even when the
// iteration stops early.

#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "dikit/npo/moment_problem.hpp"

namespace dikit::npo {

struct SparseEntry {
  std::size_t block = 0;
  std::size_t row = 0;  // row <= col; off-diagonal entries are mirrored
  std::size_t col = 0;
  double value = 0.0;
};

using SparseSymmetric = std::vector<SparseEntry>;

struct SdpProblem {
  std::vector<std::size_t> block_dims;
  SparseSymmetric c;
  std::vector<SparseSymmetric> a;  // one per y variable
  Eigen::VectorXd b;
  Eigen::MatrixXd e;  // rows: equality constraints on y
  Eigen::VectorXd f;
  Eigen::VectorXd y_bound;  // |y_i| <= y_bound_i on the feasible set (may be +inf)
  double objective_constant = 0.0;

  std::size_t num_vars() const noexcept { return a.size(); }
};

enum class SdpStatus { Optimal, MaxIter, Infeasible };

std::string_view status_name(SdpStatus s);

struct SdpOptions {
  int max_iterations = 200;
  double tolerance = 1e-8;          // internal stopping target
  double report_gap = 1e-6;         // Optimal requires gap <= this
  double report_residual = 1e-7;    // ... and residuals <= this
  double infeasibility_scale = 1e8;
};

struct SdpSolution {
  SdpStatus status = SdpStatus::MaxIter;
  // Values are in the caller's sense (min problems are negated internally).
  double primal_value = 0.0;  // moment side, b.y + const
  double dual_value = 0.0;    // certificate side, <C,X> + f.l + const
  double primal_residual = 0.0;
  double dual_residual = 0.0;  // ||r||_2 on the certificate side
  double gap = 0.0;
  double rigor_shift = 0.0;
  double certified_bound = 0.0;  // safe-side outer bound
  int iterations = 0;
  Eigen::VectorXd y;  // moment values (without the fixed identity)
};

SdpSolution solve_sdp(const SdpProblem& problem, const SdpOptions& options = {});

/// Translate a moment problem into an SdpProblem (maximization form).
SdpProblem to_sdp(const MomentProblem& p);

/// Solve a moment problem. For sense Max, certified_bound >= every feasible
/// objective value; for Min, certified_bound <= every feasible value.
SdpSolution solve_sdp(const MomentProblem& p, const SdpOptions& options = {});

/// Moment values by var id (identity included) from a solution.
std::vector<double> moment_values(const SdpSolution& s);

void to_json(nlohmann::json& j, const SdpSolution& s);

}  // namespace dikit::npo

#endif  // DIKIT_NPO_SDP_HPP
