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

#include <cmath>

#include "dikit/bell_stats.hpp"
#include "dikit/errors.hpp"

using namespace dikit;

TEST_CASE("correlation tables from explicit models") {
  StatisticsTable ideal = correlations(werner_state(1.0), bb84_settings(), bb84_settings());
  CHECK(ideal.p(0, 0, 0, 0) == Catch::Approx(0.5).margin(1e-15));
  CHECK(ideal.p(1, 1, 0, 0) == Catch::Approx(0.5).margin(1e-15));
  CHECK(ideal.p(0, 1, 0, 0) == Catch::Approx(0.0).margin(1e-15));

  StatisticsTable noise = correlations(werner_state(0.0), chsh_alice_settings(), chsh_partner_settings());
  for (double p : noise.probs()) CHECK(p == Catch::Approx(0.25).margin(1e-15));

  for (double v : {0.0, 0.3, 0.99, 1.0}) {
    StatisticsTable t = werner_chsh_table(v);
    t.validate();
    CHECK(t.no_signalling_residual() <= 1e-9);
    // Born-rule oracle: <A_x F_y> = v cos(theta_x - phi_y) for |Phi+> in the x-z plane.
    const double ta[2] = {0.0, M_PI / 2}, tf[2] = {M_PI / 4, -M_PI / 4};
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y) CHECK(t.correlator(x, y) == Catch::Approx(v * std::cos(ta[x] - tf[y])).margin(1e-12));
  }

  CHECK_THROWS_AS(correlations(werner_state(1.0), {bloch_pvm(DichotomicObservable({0, 0, 1}))},
                               {PVM{"big", {ComplexMatrix::Identity(3, 3)}}}),
                  Error);
}

TEST_CASE("CHSH winning probability") {
  double best = 0.0;
  int count = 0;
  for (int a0 = 0; a0 < 2; ++a0)
    for (int a1 = 0; a1 < 2; ++a1)
      for (int b0 = 0; b0 < 2; ++b0)
        for (int b1 = 0; b1 < 2; ++b1) {
          StatisticsTable t = deterministic_table({a0, a1}, {b0, b1});
          t.validate();
          // Count wins directly from the rule a xor b = x y.
          int a[2] = {a0, a1}, b[2] = {b0, b1}, wins = 0;
          for (int x = 0; x < 2; ++x)
            for (int y = 0; y < 2; ++y) wins += ((a[x] ^ b[y]) == (x & y));
          CHECK(chsh_winning_prob(t) == Catch::Approx(wins / 4.0).margin(1e-15));
          best = std::max(best, chsh_winning_prob(t));
          ++count;
        }
  CHECK(count == 16);
  CHECK(best == 0.75);
  CHECK(chsh_winning_prob(deterministic_table({0, 0}, {0, 0})) == 0.75);

  for (double v : {0.0, 0.5, 0.99, 1.0})
    CHECK(std::abs(chsh_winning_prob(werner_chsh_table(v)) - (0.5 + v * std::sqrt(2.0) / 4)) <= 1e-9);
  CHECK(chsh_winning_prob(werner_chsh_table(0.99)) == Catch::Approx(0.850018).margin(1e-6));
  CHECK(chsh_winning_prob(werner_chsh_table(1.0)) == Catch::Approx(kTsirelsonWin).margin(1e-9));
  CHECK(chsh_score(werner_chsh_table(1.0)) == Catch::Approx(2 * std::sqrt(2.0)).margin(1e-12));

  // Affine in v.
  double w0 = chsh_winning_prob(werner_chsh_table(0.2)), w1 = chsh_winning_prob(werner_chsh_table(0.8));
  CHECK(chsh_winning_prob(werner_chsh_table(0.5)) == Catch::Approx((w0 + w1) / 2).margin(1e-14));

  StatisticsTable wrong(3, 2, 2, 2, std::vector<double>(24, 0.25));
  CHECK_THROWS_AS(chsh_winning_prob(wrong), Error);
}

TEST_CASE("BB84 errors") {
  BB84Errors e1 = bb84_errors(werner_state(1.0), bb84_settings(), bb84_settings());
  CHECK(e1.q_x == Catch::Approx(0.0).margin(1e-15));
  CHECK(e1.q_z == Catch::Approx(0.0).margin(1e-15));
  BB84Errors e2 = bb84_errors(werner_bb84_table(0.96));
  CHECK(e2.q_x == Catch::Approx(0.02).margin(1e-12));
  CHECK(e2.q_z == Catch::Approx(0.02).margin(1e-12));
  std::vector<PVM> flipped{bloch_pvm(DichotomicObservable({0, 0, -1})), bloch_pvm(DichotomicObservable({1, 0, 0}))};
  CHECK(bb84_errors(werner_state(1.0), bb84_settings(), flipped).q_z == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("CHSH deficit") {
  CHECK(chsh_epsilon(kTsirelsonWin) == 0.0);
  CHECK(chsh_epsilon(0.75) == Catch::Approx(0.103553).margin(1e-6));
  const double v = 0.99;
  CHECK(chsh_epsilon(chsh_winning_prob(werner_chsh_table(v))) == Catch::Approx((1 - v) * std::sqrt(2.0) / 4).margin(1e-12));
  CHECK(chsh_epsilon(0.850018) == Catch::Approx(0.003536).margin(1e-6));
  CHECK_THROWS_AS(chsh_epsilon(0.9), Error);
}

TEST_CASE("statistics table JSON round trip and validation") {
  StatisticsTable t = werner_chsh_table(0.7);
  nlohmann::json j = t;
  CHECK(j.at("x_count") == 2);
  CHECK(j.at("probs").size() == 16);
  StatisticsTable back = j.get<StatisticsTable>();
  CHECK(back.probs() == t.probs());

  std::vector<double> probs(16, 0.25);
  probs[0] = 0.5;
  probs[1] = 0.0;  // still normalized, but Bob's marginal now depends on x
  StatisticsTable signalling(2, 2, 2, 2, probs);
  CHECK(signalling.no_signalling_residual() > 1e-3);
  CHECK_THROWS_AS(signalling.validate(), Error);
  CHECK_THROWS_AS(StatisticsTable(2, 2, 2, 2, std::vector<double>(15, 0.0)), Error);
}
