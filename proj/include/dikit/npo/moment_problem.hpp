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

#ifndef DIKIT_NPO_MOMENT_PROBLEM_HPP
#define DIKIT_NPO_MOMENT_PROBLEM_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "dikit/npo/word.hpp"

namespace dikit::npo {

enum class Sense { Min, Max };

struct PartySpec {
  std::string name;
  std::uint16_t generators = 0;
  bool free = false;  // free letters: no involution relation, come with adjoints
  bool in_level_set = true;  // false: letters enter only through extra index words
};

struct LinearConstraint {
  std::vector<std::pair<std::size_t, double>> coeffs;  // (moment var id, coefficient)
  double target = 0.0;
  std::string label;
};

struct LinearForm {
  std::vector<std::pair<std::size_t, double>> coeffs;
  double constant = 0.0;
};

/// <poly> = value, or <poly> <= value.
struct MomentCondition {
  Polynomial poly;
  double value = 0.0;
  std::string label;
};

struct MomentProblemSpec {
  std::vector<PartySpec> parties;
  int level = 1;
  std::vector<MomentCondition> equalities;
  std::vector<MomentCondition> upper_bounds;
  Polynomial objective;
  Sense sense = Sense::Max;
  // Appended to the generated index set (used for free-letter extensions).
  std::vector<Word> extra_index_words;
  // Operator-norm bound assumed for free letters. Index words containing k
  // free letters get the diagonal cap <u^dagger u> <= norm^(2k).
  double free_letter_norm = 1.0;
};

struct MomentProblem {
  std::vector<std::string> party_names;
  std::vector<Word> index_words;
  std::vector<Word> moment_vars;  // id -> key word; id 0 is the identity, fixed to 1
  std::map<Word, std::size_t> var_index;
  std::vector<std::vector<std::vector<std::size_t>>> psd_blocks;  // grids of var ids
  std::vector<LinearConstraint> eq_constraints;
  std::vector<LinearConstraint> le_constraints;
  LinearForm objective;
  Sense sense = Sense::Max;
  std::vector<double> var_bounds;  // |<w>| <= bound for every feasible point

  std::size_t variable_count() const noexcept { return moment_vars.size(); }
  std::optional<std::size_t> find_var(const Word& w) const;
  /// Evaluate a polynomial on a vector of moment values (index = var id).
  double evaluate(const Polynomial& p, const std::vector<double>& moments) const;
};

/// Canonical words in which each party's segment has length <= level.
/// Party-major order, shortest words first within each party.
std::vector<Word> level_index_words(const std::vector<PartySpec>& parties, int level);

/// Throws LevelTooLow if a condition or objective needs a moment that the
/// PSD block does not contain; ConfigError on an empty party list or L < 1.
MomentProblem build_moment_problem(const MomentProblemSpec& spec);

void to_json(nlohmann::json& j, const MomentProblem& p);

}  // namespace dikit::npo

#endif  // DIKIT_NPO_MOMENT_PROBLEM_HPP
