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

#include "dikit/npo/moment_problem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "dikit/errors.hpp"

namespace dikit::npo {

namespace {

// Reduced words over one party's letters with length <= max_len.
std::vector<std::vector<Letter>> party_words(std::uint16_t party, const PartySpec& spec, int max_len) {
  std::vector<Letter> alphabet;
  for (std::uint16_t g = 0; g < spec.generators; ++g) {
    if (spec.free) {
      alphabet.push_back(free_letter(party, g, false));
      alphabet.push_back(free_letter(party, g, true));
    } else {
      alphabet.push_back(inv(party, g));
    }
  }
  std::vector<std::vector<Letter>> out{{}};
  std::vector<std::vector<Letter>> frontier{{}};
  for (int len = 1; len <= max_len; ++len) {
    std::vector<std::vector<Letter>> next;
    for (const auto& w : frontier)
      for (const Letter& l : alphabet) {
        if (!l.free && !w.empty() && w.back() == l) continue;
        auto ext = w;
        ext.push_back(l);
        next.push_back(std::move(ext));
      }
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

std::size_t free_count(const Word& w) {
  return static_cast<std::size_t>(
      std::count_if(w.letters().begin(), w.letters().end(), [](const Letter& l) { return l.free; }));
}

}  // namespace

std::optional<std::size_t> MomentProblem::find_var(const Word& w) const {
  auto it = var_index.find(moment_key(w));
  if (it == var_index.end()) return std::nullopt;
  return it->second;
}

double MomentProblem::evaluate(const Polynomial& p, const std::vector<double>& moments) const {
  double v = 0.0;
  for (const auto& [w, c] : p.terms()) {
    auto id = find_var(w);
    if (!id) fail(ErrorCode::LevelTooLow, "polynomial term is not housed in the moment matrix");
    v += c * moments.at(*id);
  }
  return v;
}

std::vector<Word> level_index_words(const std::vector<PartySpec>& parties, int level) {
  if (level < 1) fail(ErrorCode::ConfigError, "relaxation level must be >= 1");
  std::vector<Word> words{Word{}};
  for (std::size_t p = 0; p < parties.size(); ++p) {
    if (!parties[p].in_level_set) continue;
    auto segs = party_words(static_cast<std::uint16_t>(p), parties[p], level);
    std::vector<Word> next;
    for (const Word& prefix : words)
      for (const auto& seg : segs) {
        std::vector<Letter> letters = prefix.letters();
        letters.insert(letters.end(), seg.begin(), seg.end());
        next.emplace_back(std::move(letters));
      }
    words = std::move(next);
  }
  // Order: total length first, then lexicographic, so the identity leads.
  std::stable_sort(words.begin(), words.end(), [](const Word& a, const Word& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return words;
}

MomentProblem build_moment_problem(const MomentProblemSpec& spec) {
  if (spec.parties.empty()) fail(ErrorCode::ConfigError, "moment problem needs at least one party");
  MomentProblem p;
  p.sense = spec.sense;
  for (const auto& party : spec.parties) p.party_names.push_back(party.name);

  std::vector<Word> index = level_index_words(spec.parties, spec.level);
  std::set<Word> seen(index.begin(), index.end());
  for (const Word& w : spec.extra_index_words) {
    Word c = canonicalize(w);
    if (seen.insert(c).second) index.push_back(c);
  }
  p.index_words = index;

  auto var_of = [&](const Word& key) {
    auto [it, inserted] = p.var_index.try_emplace(key, p.moment_vars.size());
    if (inserted) p.moment_vars.push_back(key);
    return it->second;
  };
  var_of(Word{});

  const std::size_t n = index.size();
  std::vector<Word> adj(n);
  for (std::size_t i = 0; i < n; ++i) adj[i] = adjoint(index[i]);
  std::vector<std::vector<std::size_t>> grid(n, std::vector<std::size_t>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      std::size_t id = var_of(moment_key(adj[i] * index[j]));
      grid[i][j] = grid[j][i] = id;
    }
  p.psd_blocks.push_back(std::move(grid));
  const auto& g = p.psd_blocks.front();

  // Diagonal caps for free-letter words, then entrywise bounds via PSD:
  // |G_uv| <= sqrt(G_uu G_vv).
  const double norm = spec.free_letter_norm;
  if (!(norm > 0.0) || !std::isfinite(norm)) fail(ErrorCode::ConfigError, "free letter norm must be positive");
  std::vector<double> diag(n, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t k = free_count(index[i]);
    if (k == 0) continue;
    diag[i] = std::pow(norm * norm, static_cast<double>(k));
    p.le_constraints.push_back({{{g[i][i], 1.0}}, diag[i], "norm cap " + to_string(index[i], p.party_names)});
  }
  p.var_bounds.assign(p.moment_vars.size(), std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      double& b = p.var_bounds[g[i][j]];
      b = std::min(b, std::sqrt(diag[i] * diag[j]));
    }
  p.var_bounds[0] = 1.0;

  auto linearize = [&](const Polynomial& poly, const std::string& what) {
    LinearForm f;
    std::map<std::size_t, double> acc;
    for (const auto& [w, c] : poly.terms()) {
      auto it = p.var_index.find(moment_key(w));
      if (it == p.var_index.end())
        fail(ErrorCode::LevelTooLow,
             what + " needs moment <" + to_string(w, p.party_names) + "> beyond level " + std::to_string(spec.level));
      if (it->second == 0) {
        f.constant += c;
      } else {
        acc[it->second] += c;
      }
    }
    for (const auto& [id, c] : acc)
      if (c != 0.0) f.coeffs.emplace_back(id, c);
    return f;
  };

  for (const auto& cond : spec.equalities) {
    LinearForm f = linearize(cond.poly, "equality '" + cond.label + "'");
    p.eq_constraints.push_back({f.coeffs, cond.value - f.constant, cond.label});
  }
  for (const auto& cond : spec.upper_bounds) {
    LinearForm f = linearize(cond.poly, "bound '" + cond.label + "'");
    p.le_constraints.push_back({f.coeffs, cond.value - f.constant, cond.label});
  }
  p.objective = linearize(spec.objective, "objective");
  return p;
}

void to_json(nlohmann::json& j, const MomentProblem& p) {
  auto words = nlohmann::json::array();
  for (const Word& w : p.index_words) words.push_back(to_string(w, p.party_names));
  auto vars = nlohmann::json::array();
  for (const Word& w : p.moment_vars) vars.push_back(to_string(w, p.party_names));
  auto constraint = [](const LinearConstraint& c) {
    auto coeffs = nlohmann::json::array();
    for (const auto& [id, v] : c.coeffs) coeffs.push_back({id, v});
    return nlohmann::json{{"label", c.label}, {"coeffs", coeffs}, {"target", c.target}};
  };
  auto eqs = nlohmann::json::array(), les = nlohmann::json::array();
  for (const auto& c : p.eq_constraints) eqs.push_back(constraint(c));
  for (const auto& c : p.le_constraints) les.push_back(constraint(c));
  auto obj = nlohmann::json::array();
  for (const auto& [id, v] : p.objective.coeffs) obj.push_back({id, v});
  j = nlohmann::json{{"index_words", words},
                     {"moment_vars", vars},
                     {"psd_blocks", p.psd_blocks},
                     {"eq_constraints", eqs},
                     {"le_constraints", les},
                     {"objective", {{"coeffs", obj}, {"constant", p.objective.constant}}},
                     {"sense", p.sense == Sense::Max ? "max" : "min"}};
}

}  // namespace dikit::npo
