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

#ifndef DIKIT_NPO_WORD_HPP
#define DIKIT_NPO_WORD_HPP

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <string>
#include <vector>

namespace dikit::npo {

/// One generator. Involution letters satisfy L^2 = 1 and are Hermitian;
/// free letters (used for the entropy tier's Z operators) carry a star flag
/// and obey no relations beyond commuting with other parties.
struct Letter {
  std::uint16_t party = 0;
  std::uint16_t index = 0;
  bool free = false;
  bool star = false;

  friend auto operator<=>(const Letter&, const Letter&) = default;
};

inline Letter inv(std::uint16_t party, std::uint16_t index) { return Letter{party, index, false, false}; }
inline Letter free_letter(std::uint16_t party, std::uint16_t index, bool star = false) {
  return Letter{party, index, true, star};
}

class Word {
 public:
  Word() = default;
  Word(std::initializer_list<Letter> letters) : letters_(letters) {}
  explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {}

  const std::vector<Letter>& letters() const noexcept { return letters_; }
  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }

  /// Number of letters belonging to `party`.
  std::size_t party_length(std::uint16_t party) const;

  Word operator*(const Word& rhs) const;

  friend auto operator<=>(const Word&, const Word&) = default;
  friend bool operator==(const Word&, const Word&) = default;

 private:
  std::vector<Letter> letters_;
};

/// Party-major stable ordering followed by cancellation of adjacent equal
/// involution letters. Idempotent.
Word canonicalize(const Word& w);

/// Reverse and conjugate letters; result is canonical.
Word adjoint(const Word& w);

/// Canonical key under which a real moment <w> is stored: the smaller of
/// canonical(w) and canonical(w^dagger).
Word moment_key(const Word& w);

/// Human-readable form using party names, e.g. "A0 A1 F1" or "Z0*".
std::string to_string(const Word& w, const std::vector<std::string>& party_names);

/// Real-coefficient polynomial in the generators, kept in canonical form.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(double constant);  // NOLINT: implicit scalar promotion is intended
  Polynomial(const Word& w, double coeff = 1.0);

  const std::map<Word, double>& terms() const noexcept { return terms_; }
  bool empty() const noexcept { return terms_.empty(); }
  double coefficient(const Word& w) const;
  std::size_t degree() const;

  Polynomial& operator+=(const Polynomial& rhs);
  Polynomial& operator-=(const Polynomial& rhs);
  Polynomial& operator*=(double s);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, double s) { return a *= s; }
  friend Polynomial operator*(double s, Polynomial a) { return a *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);

  Polynomial adjoint() const;

 private:
  void add(const Word& w, double c);
  std::map<Word, double> terms_;
};

}  // namespace dikit::npo

#endif  // DIKIT_NPO_WORD_HPP
