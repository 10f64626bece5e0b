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

#include "dikit/npo/word.hpp"

#include <algorithm>
#include <cmath>

namespace dikit::npo {

std::size_t Word::party_length(std::uint16_t party) const {
  return static_cast<std::size_t>(
      std::count_if(letters_.begin(), letters_.end(), [&](const Letter& l) { return l.party == party; }));
}

Word Word::operator*(const Word& rhs) const {
  std::vector<Letter> out = letters_;
  out.insert(out.end(), rhs.letters_.begin(), rhs.letters_.end());
  return canonicalize(Word(std::move(out)));
}

Word canonicalize(const Word& w) {
  std::vector<Letter> sorted = w.letters();
  std::stable_sort(sorted.begin(), sorted.end(), [](const Letter& a, const Letter& b) { return a.party < b.party; });
  // Stack reduction: cancelling one adjacent pair can expose another.
  std::vector<Letter> out;
  out.reserve(sorted.size());
  for (const Letter& l : sorted) {
    if (!l.free && !out.empty() && out.back() == l) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return Word(std::move(out));
}

Word adjoint(const Word& w) {
  std::vector<Letter> rev(w.letters().rbegin(), w.letters().rend());
  for (Letter& l : rev)
    if (l.free) l.star = !l.star;
  return canonicalize(Word(std::move(rev)));
}

Word moment_key(const Word& w) {
  Word c = canonicalize(w);
  Word a = adjoint(c);
  return std::min(c, a);
}

std::string to_string(const Word& w, const std::vector<std::string>& party_names) {
  if (w.empty()) return "1";
  std::string s;
  for (const Letter& l : w.letters()) {
    if (!s.empty()) s += ' ';
    s += l.party < party_names.size() ? party_names[l.party] : "P" + std::to_string(l.party);
    s += std::to_string(l.index);
    if (l.star) s += '*';
  }
  return s;
}

Polynomial::Polynomial(double constant) {
  if (constant != 0.0) terms_[Word{}] = constant;
}

Polynomial::Polynomial(const Word& w, double coeff) { add(canonicalize(w), coeff); }

void Polynomial::add(const Word& w, double c) {
  if (c == 0.0) return;
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0.0) terms_.erase(it);
  }
}

double Polynomial::coefficient(const Word& w) const {
  auto it = terms_.find(canonicalize(w));
  return it == terms_.end() ? 0.0 : it->second;
}

std::size_t Polynomial::degree() const {
  std::size_t d = 0;
  for (const auto& [w, c] : terms_) d = std::max(d, w.size());
  return d;
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
  for (const auto& [w, c] : rhs.terms_) add(w, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) {
  for (const auto& [w, c] : rhs.terms_) add(w, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(double s) {
  if (s == 0.0) {
    terms_.clear();
    return *this;
  }
  for (auto& [w, c] : terms_) c *= s;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial out;
  for (const auto& [wa, ca] : a.terms_)
    for (const auto& [wb, cb] : b.terms_) out.add(wa * wb, ca * cb);
  return out;
}

Polynomial Polynomial::adjoint() const {
  Polynomial out;
  for (const auto& [w, c] : terms_) out.add(npo::adjoint(w), c);
  return out;
}

}  // namespace dikit::npo
