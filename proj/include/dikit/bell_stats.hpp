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

#ifndef DIKIT_BELL_STATS_HPP
#define DIKIT_BELL_STATS_HPP

#include <cstddef>
#include <vector>

#include <json.hpp>

#include "dikit/quantum_model.hpp"

namespace dikit {

inline constexpr double kTsirelsonWin = 0.85355339059327376220;  // (2 + sqrt 2) / 4

/// Correlation table p(a,b|x,y), stored row-major as [x][y][a][b].
class StatisticsTable {
 public:
  StatisticsTable() = default;
  StatisticsTable(std::size_t x_count, std::size_t y_count, std::size_t a_count, std::size_t b_count,
                  std::vector<double> probs);

  std::size_t x_count() const noexcept { return nx_; }
  std::size_t y_count() const noexcept { return ny_; }
  std::size_t a_count() const noexcept { return na_; }
  std::size_t b_count() const noexcept { return nb_; }
  const std::vector<double>& probs() const noexcept { return probs_; }

  double p(std::size_t a, std::size_t b, std::size_t x, std::size_t y) const;
  double marginal_a(std::size_t a, std::size_t x, std::size_t y) const;
  double marginal_b(std::size_t b, std::size_t x, std::size_t y) const;

  /// <A_x B_y> for binary outcomes mapped 0 -> +1, 1 -> -1.
  double correlator(std::size_t x, std::size_t y) const;
  /// <A_x>, averaged over y (exact when no-signalling holds).
  double alice_mean(std::size_t x) const;
  double bob_mean(std::size_t y) const;

  /// Largest violation of normalization or of the no-signalling conditions.
  double no_signalling_residual() const;
  /// Throws RangeError if entries are negative beyond 1e-12, rows are not
  /// normalized within 1e-9 or marginals signal beyond 1e-9.
  void validate() const;
  bool is_binary_2x2() const { return nx_ == 2 && ny_ == 2 && na_ == 2 && nb_ == 2; }

 private:
  std::size_t index(std::size_t a, std::size_t b, std::size_t x, std::size_t y) const;

  std::size_t nx_ = 0, ny_ = 0, na_ = 0, nb_ = 0;
  std::vector<double> probs_;
};

void to_json(nlohmann::json& j, const StatisticsTable& t);
void from_json(const nlohmann::json& j, StatisticsTable& t);

struct BB84Errors {
  double q_x = 0.0;
  double q_z = 0.0;
};

/// Born-rule table for a bipartite state with Alice on factor 0 and Bob on
/// factor 1.
StatisticsTable correlations(const DensityMatrix& rho, const std::vector<PVM>& alice, const std::vector<PVM>& bob);

/// (1/4) sum_{x,y} Pr[a xor b = x y | x, y].
double chsh_winning_prob(const StatisticsTable& t);
/// sum_{x,y} (-1)^{xy} <A_x B_y>; equals 8 omega - 4.
double chsh_score(const StatisticsTable& t);

/// q_z = Pr[Z_A != Z_B], q_x = Pr[X_A != X_B]; PVM lists are ordered (Z, X).
BB84Errors bb84_errors(const DensityMatrix& rho, const std::vector<PVM>& alice, const std::vector<PVM>& bob);
BB84Errors bb84_errors(const StatisticsTable& t);

/// Deficit from the Tsirelson winning probability, max(0, (2+sqrt2)/4 - omega).
double chsh_epsilon(double omega);

/// Alice {0, pi/2} and partner {pi/4, -pi/4} in the x-z plane.
std::vector<PVM> chsh_alice_settings();
std::vector<PVM> chsh_partner_settings();
/// Z and X measurements, identical on both sides.
std::vector<PVM> bb84_settings();

/// Local-test table of a Werner state with the optimal CHSH settings.
StatisticsTable werner_chsh_table(double visibility);
/// Long-range BB84 table (inputs Z, X on both sides) of a Werner state.
StatisticsTable werner_bb84_table(double visibility);
/// Deterministic local strategy: outputs a[x] and b[y].
StatisticsTable deterministic_table(std::array<int, 2> a, std::array<int, 2> b);

}  // namespace dikit

#endif  // DIKIT_BELL_STATS_HPP
