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

#ifndef DIKIT_CLI_COMMANDS_HPP
#define DIKIT_CLI_COMMANDS_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "dikit/npo/sdp.hpp"

namespace dikit::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kUsage = 1;
inline constexpr int kNumerical = 2;

/// Entry point; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct EquivReport {
  int trials = 0;
  double max_stat_deviation = 0.0;
  double max_entropy_deviation = 0.0;
  std::uint64_t worst_seed = 0;
};

/// Translate `trials` random routed models (trial k seeded with seed + k)
/// and compare statistics and H(A|E). `corrupt_marginal` swaps in an
/// unrelated short-range state (negative control; throws MarginalMismatch).
EquivReport equivalence_check(std::uint64_t seed, int trials, bool corrupt_marginal = false);

struct SelftestRow {
  std::string name;
  double bound = 0.0;
  double target = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

std::vector<SelftestRow> sdp_selftest(const npo::SdpOptions& options = {});

}  // namespace dikit::cli

#endif  // DIKIT_CLI_COMMANDS_HPP
