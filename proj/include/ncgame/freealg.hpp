#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ncgame/cyclo.hpp"

namespace ncgame {

using Letter = std::uint16_t;

/// A word in the free monoid; the empty word is the identity.
class Word {
 public:
  Word() = default;
  Word(std::initializer_list<Letter> l) : letters_(l) {}
  explicit Word(std::vector<Letter> l) : letters_(std::move(l)) {}
  Word(std::vector<Letter>::const_iterator first, std::vector<Letter>::const_iterator last)
      : letters_(first, last) {}

  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  Letter operator[](std::size_t i) const noexcept { return letters_[i]; }
  Letter back() const noexcept { return letters_.back(); }
  auto begin() const noexcept { return letters_.begin(); }
  auto end() const noexcept { return letters_.end(); }
  const std::vector<Letter>& letters() const noexcept { return letters_; }

  Word sub(std::size_t pos, std::size_t len) const {
    return Word(letters_.begin() + pos, letters_.begin() + pos + len);
  }
  Word prefix(std::size_t len) const { return sub(0, len); }
  Word suffix(std::size_t len) const { return sub(size() - len, len); }

  /// First occurrence of `w` as a contiguous subword at or after `from`.
  std::optional<std::size_t> find(const Word& w, std::size_t from = 0) const;
  bool contains(const Word& w) const { return find(w).has_value(); }
  bool ends_with(const Word& w) const;

  Word& operator*=(const Word& o) {
    letters_.insert(letters_.end(), o.letters_.begin(), o.letters_.end());
    return *this;
  }
  friend Word operator*(Word a, const Word& b) { return a *= b; }
  void push_back(Letter l) { letters_.push_back(l); }

  friend bool operator==(const Word&, const Word&) = default;

 private:
  std::vector<Letter> letters_;
};

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept;
};

enum class AdjointRule { SelfAdjoint, Unitary };

/// One generator of a free *-algebra.
struct Variable {
  std::string name;
  AdjointRule adjoint = AdjointRule::SelfAdjoint;
  int unitary_order = 0;  // m with g^m = 1 when adjoint == Unitary
  bool auxiliary = false;  // the marker letter xi of the mixed-ideal encoding
  int player = -1;
  int question = -1;
  int answer = -1;
};

class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<Variable> vars);

  Letter add(Variable v);
  std::size_t size() const noexcept { return vars_.size(); }
  const Variable& operator[](Letter l) const { return vars_.at(l); }
  const std::vector<Variable>& variables() const noexcept { return vars_; }
  std::optional<Letter> find(std::string_view name) const;
  Letter index(std::string_view name) const;  // throws UsageError
  std::optional<Letter> auxiliary() const noexcept { return aux_; }

  friend bool operator==(const Alphabet& a, const Alphabet& b);

 private:
  std::vector<Variable> vars_;
  std::unordered_map<std::string, Letter> by_name_;
  std::optional<Letter> aux_;
};

/// Graded lexicographic order: shorter words are smaller; words of equal length
/// compare at the first differing letter by precedence rank.
class MonomialOrder {
 public:
  MonomialOrder() = default;
  /// precedence[k] is the letter with rank k (ascending).
  explicit MonomialOrder(const std::vector<Letter>& precedence);
  static MonomialOrder identity(std::size_t n);

  std::strong_ordering compare(const Word& u, const Word& v) const noexcept;
  bool less(const Word& u, const Word& v) const noexcept { return compare(u, v) < 0; }
  int rank(Letter l) const noexcept { return rank_[l]; }
  std::size_t size() const noexcept { return rank_.size(); }
  std::vector<Letter> precedence() const;

  friend bool operator==(const MonomialOrder&, const MonomialOrder&) = default;

 private:
  std::vector<int> rank_;
};

/// Coefficient field, alphabet and monomial order shared by a family of polynomials.
struct Ring {
  const CycloField* field;
  Alphabet alphabet;
  MonomialOrder order;

  const CycloField& coefficients() const noexcept { return *field; }
  /// Same ring with an auxiliary letter "xi" appended as the greatest symbol.
  std::shared_ptr<const Ring> with_auxiliary(std::string name = "xi") const;
};

using RingPtr = std::shared_ptr<const Ring>;

RingPtr make_ring(const CycloField& field, Alphabet alphabet);
RingPtr make_ring(const CycloField& field, Alphabet alphabet, MonomialOrder order);
bool same_ring(const Ring& a, const Ring& b);

struct Term {
  Word word;
  Cyclo coeff;
};

/// Noncommutative polynomial: terms sorted by descending monomial order,
/// no zero coefficients, no repeated words.
class NCPoly {
 public:
  explicit NCPoly(RingPtr ring) : ring_(std::move(ring)) {}
  NCPoly(RingPtr ring, std::vector<Term> terms);  // canonicalizes

  static NCPoly constant(RingPtr ring, const Cyclo& c);
  static NCPoly constant(RingPtr ring, long c);
  static NCPoly monomial(RingPtr ring, Word w, Cyclo c);
  static NCPoly monomial(RingPtr ring, Word w);
  static NCPoly variable(RingPtr ring, std::string_view name);

  const RingPtr& ring() const noexcept { return ring_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }
  const Word& leading_word() const;
  const Cyclo& leading_coeff() const;
  std::size_t degree() const noexcept;
  Cyclo coefficient(const Word& w) const;

  NCPoly& operator+=(const NCPoly& o);
  NCPoly& operator-=(const NCPoly& o);
  NCPoly operator-() const;
  NCPoly& operator*=(const Cyclo& c);
  friend NCPoly operator+(NCPoly a, const NCPoly& b) { return a += b; }
  friend NCPoly operator-(NCPoly a, const NCPoly& b) { return a -= b; }
  friend NCPoly operator*(NCPoly a, const Cyclo& c) { return a *= c; }
  friend NCPoly operator*(const NCPoly& a, const NCPoly& b) { return a.multiply(b); }

  NCPoly multiply(const NCPoly& o) const;
  /// u * this * v
  NCPoly sandwich(const Word& u, const Word& v) const;
  NCPoly adjoint() const;
  NCPoly monic() const;
  /// Re-express over another ring whose alphabet contains every letter name used here.
  NCPoly embed(RingPtr target) const;

  friend bool operator==(const NCPoly& a, const NCPoly& b);

  std::string to_string() const;
  static NCPoly parse(RingPtr ring, std::string_view text);

 private:
  void check_ring(const NCPoly& o) const;

  RingPtr ring_;
  std::vector<Term> terms_;
};

/// Letters of `w` joined by spaces, or "1" for the empty word.
std::string word_to_string(const Alphabet& a, const Word& w);
/// Inverse of word_to_string; also accepts "·" or "*" as separators.
Word parse_word(const Alphabet& a, std::string_view text);
/// Adjoint of a single word: reversed, unitary letters replaced by g^(m-1).
Word adjoint_word(const Alphabet& a, const Word& w);

std::ostream& operator<<(std::ostream& os, const NCPoly& p);

}  // namespace ncgame
