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

#include "dikit/bell_stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dikit/errors.hpp"

namespace dikit {

StatisticsTable::StatisticsTable(std::size_t x_count, std::size_t y_count, std::size_t a_count, std::size_t b_count,
                                 std::vector<double> probs)
    : nx_(x_count), ny_(y_count), na_(a_count), nb_(b_count), probs_(std::move(probs)) {
  if (nx_ == 0 || ny_ == 0 || na_ == 0 || nb_ == 0) fail(ErrorCode::ShapeError, "table dimensions must be positive");
  if (probs_.size() != nx_ * ny_ * na_ * nb_) fail(ErrorCode::ShapeError, "probability array has the wrong length");
}

std::size_t StatisticsTable::index(std::size_t a, std::size_t b, std::size_t x, std::size_t y) const {
  if (a >= na_ || b >= nb_ || x >= nx_ || y >= ny_) fail(ErrorCode::ShapeError, "table index out of range");
  return ((x * ny_ + y) * na_ + a) * nb_ + b;
}

double StatisticsTable::p(std::size_t a, std::size_t b, std::size_t x, std::size_t y) const {
  return probs_[index(a, b, x, y)];
}

double StatisticsTable::marginal_a(std::size_t a, std::size_t x, std::size_t y) const {
  double s = 0.0;
  for (std::size_t b = 0; b < nb_; ++b) s += p(a, b, x, y);
  return s;
}

double StatisticsTable::marginal_b(std::size_t b, std::size_t x, std::size_t y) const {
  double s = 0.0;
  for (std::size_t a = 0; a < na_; ++a) s += p(a, b, x, y);
  return s;
}

double StatisticsTable::correlator(std::size_t x, std::size_t y) const {
  if (na_ != 2 || nb_ != 2) fail(ErrorCode::ShapeError, "correlators need binary outcomes");
  return p(0, 0, x, y) + p(1, 1, x, y) - p(0, 1, x, y) - p(1, 0, x, y);
}

double StatisticsTable::alice_mean(std::size_t x) const {
  if (na_ != 2) fail(ErrorCode::ShapeError, "means need binary outcomes");
  double s = 0.0;
  for (std::size_t y = 0; y < ny_; ++y) s += marginal_a(0, x, y) - marginal_a(1, x, y);
  return s / static_cast<double>(ny_);
}

double StatisticsTable::bob_mean(std::size_t y) const {
  if (nb_ != 2) fail(ErrorCode::ShapeError, "means need binary outcomes");
  double s = 0.0;
  for (std::size_t x = 0; x < nx_; ++x) s += marginal_b(0, x, y) - marginal_b(1, x, y);
  return s / static_cast<double>(nx_);
}

double StatisticsTable::no_signalling_residual() const {
  double worst = 0.0;
  for (std::size_t x = 0; x < nx_; ++x)
    for (std::size_t y = 0; y < ny_; ++y) {
      double total = 0.0;
      for (std::size_t a = 0; a < na_; ++a) total += marginal_a(a, x, y);
      worst = std::max(worst, std::abs(total - 1.0));
      for (std::size_t a = 0; a < na_; ++a)
        worst = std::max(worst, std::abs(marginal_a(a, x, y) - marginal_a(a, x, 0)));
      for (std::size_t b = 0; b < nb_; ++b)
        worst = std::max(worst, std::abs(marginal_b(b, x, y) - marginal_b(b, 0, y)));
    }
  return worst;
}

void StatisticsTable::validate() const {
  for (double v : probs_)
    if (!(v >= -1e-12)) fail(ErrorCode::RangeError, "negative probability in table");
  if (no_signalling_residual() > 1e-9) fail(ErrorCode::RangeError, "table is not normalized or signals");
}

void to_json(nlohmann::json& j, const StatisticsTable& t) {
  j = nlohmann::json{{"x_count", t.x_count()}, {"y_count", t.y_count()}, {"a_count", t.a_count()},
                     {"b_count", t.b_count()}, {"probs", t.probs()}};
}

void from_json(const nlohmann::json& j, StatisticsTable& t) {
  t = StatisticsTable(j.at("x_count").get<std::size_t>(), j.at("y_count").get<std::size_t>(),
                      j.at("a_count").get<std::size_t>(), j.at("b_count").get<std::size_t>(),
                      j.at("probs").get<std::vector<double>>());
}

StatisticsTable correlations(const DensityMatrix& rho, const std::vector<PVM>& alice, const std::vector<PVM>& bob) {
  if (rho.space().num_factors() != 2) fail(ErrorCode::DimensionMismatch, "correlations need a bipartite state");
  if (alice.empty() || bob.empty()) fail(ErrorCode::ShapeError, "need at least one input per side");
  const std::size_t na = alice.front().outcomes(), nb = bob.front().outcomes();
  for (const auto& p : alice)
    if (p.dim() != rho.space().dim(0) || p.outcomes() != na) fail(ErrorCode::DimensionMismatch, "Alice PVM mismatch");
  for (const auto& p : bob)
    if (p.dim() != rho.space().dim(1) || p.outcomes() != nb) fail(ErrorCode::DimensionMismatch, "Bob PVM mismatch");

  std::vector<double> probs;
  probs.reserve(alice.size() * bob.size() * na * nb);
  for (const auto& px : alice)
    for (const auto& py : bob)
      for (const auto& ma : px.projectors)
        for (const auto& nb_proj : py.projectors) probs.push_back((kron(ma, nb_proj) * rho.mat()).trace().real());
  StatisticsTable t(alice.size(), bob.size(), na, nb, std::move(probs));
  t.validate();
  return t;
}

double chsh_winning_prob(const StatisticsTable& t) {
  if (!t.is_binary_2x2()) fail(ErrorCode::ShapeError, "CHSH needs two binary inputs per side");
  double w = 0.0;
  for (std::size_t x = 0; x < 2; ++x)
    for (std::size_t y = 0; y < 2; ++y)
      for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b)
          if ((a ^ b) == (x & y)) w += t.p(a, b, x, y);
  return w / 4.0;
}

double chsh_score(const StatisticsTable& t) {
  if (!t.is_binary_2x2()) fail(ErrorCode::ShapeError, "CHSH needs two binary inputs per side");
  return t.correlator(0, 0) + t.correlator(0, 1) + t.correlator(1, 0) - t.correlator(1, 1);
}

BB84Errors bb84_errors(const StatisticsTable& t) {
  if (!t.is_binary_2x2()) fail(ErrorCode::ShapeError, "BB84 errors need (Z, X) binary measurements");
  BB84Errors e;
  // round-off can leave a -1e-17 here
  e.q_z = std::clamp(t.p(0, 1, 0, 0) + t.p(1, 0, 0, 0), 0.0, 1.0);
  e.q_x = std::clamp(t.p(0, 1, 1, 1) + t.p(1, 0, 1, 1), 0.0, 1.0);
  return e;
}

BB84Errors bb84_errors(const DensityMatrix& rho, const std::vector<PVM>& alice, const std::vector<PVM>& bob) {
  if (alice.size() != 2 || bob.size() != 2) fail(ErrorCode::ShapeError, "BB84 needs (Z, X) on both sides");
  return bb84_errors(correlations(rho, alice, bob));
}

double chsh_epsilon(double omega) {
  if (!(omega >= 0.0) || omega > kTsirelsonWin + 1e-12)
    fail(ErrorCode::RangeError, "winning probability outside [0, Tsirelson]");
  return std::max(0.0, kTsirelsonWin - omega);
}

std::vector<PVM> chsh_alice_settings() {
  return {bloch_pvm(DichotomicObservable::xz_plane(0.0), "A0"),
          bloch_pvm(DichotomicObservable::xz_plane(std::numbers::pi / 2), "A1")};
}

std::vector<PVM> chsh_partner_settings() {
  return {bloch_pvm(DichotomicObservable::xz_plane(std::numbers::pi / 4), "F0"),
          bloch_pvm(DichotomicObservable::xz_plane(-std::numbers::pi / 4), "F1")};
}

std::vector<PVM> bb84_settings() {
  return {bloch_pvm(DichotomicObservable::xz_plane(0.0), "Z"),
          bloch_pvm(DichotomicObservable::xz_plane(std::numbers::pi / 2), "X")};
}

StatisticsTable werner_chsh_table(double visibility) {
  return correlations(werner_state(visibility), chsh_alice_settings(), chsh_partner_settings());
}

StatisticsTable werner_bb84_table(double visibility) {
  return correlations(werner_state(visibility), bb84_settings(), bb84_settings());
}

StatisticsTable deterministic_table(std::array<int, 2> a, std::array<int, 2> b) {
  std::vector<double> probs(16, 0.0);
  for (std::size_t x = 0; x < 2; ++x)
    for (std::size_t y = 0; y < 2; ++y)
      probs[((x * 2 + y) * 2 + static_cast<std::size_t>(a[x])) * 2 + static_cast<std::size_t>(b[y])] = 1.0;
  return StatisticsTable(2, 2, 2, 2, std::move(probs));
}

}  // namespace dikit
