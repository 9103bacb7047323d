#include "ncgame/freealg.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <ostream>
#include <sstream>

#include "ncgame/errors.hpp"

namespace ncgame {

std::optional<std::size_t> Word::find(const Word& w, std::size_t from) const {
  if (w.size() > size()) return std::nullopt;
  auto it = std::search(letters_.begin() + from, letters_.end(), w.letters_.begin(), w.letters_.end());
  if (it == letters_.end() && !w.empty()) return std::nullopt;
  return static_cast<std::size_t>(it - letters_.begin());
}

bool Word::ends_with(const Word& w) const {
  return w.size() <= size() && std::equal(w.begin(), w.end(), letters_.end() - w.size());
}

std::size_t WordHash::operator()(const Word& w) const noexcept {
  std::size_t h = 0xcbf29ce484222325ull ^ w.size();
  for (Letter l : w) h = (h ^ l) * 0x100000001b3ull;
  return h;
}

// ---------------------------------------------------------------- Alphabet

Alphabet::Alphabet(std::vector<Variable> vars) {
  for (auto& v : vars) add(std::move(v));
}

Letter Alphabet::add(Variable v) {
  if (v.name.empty()) throw UsageError("variable name must not be empty");
  if (std::isdigit(static_cast<unsigned char>(v.name[0])))
    throw UsageError("variable name must not start with a digit: " + v.name);
  if (by_name_.count(v.name)) throw UsageError("duplicate variable name: " + v.name);
  if (v.auxiliary && aux_) throw UsageError("alphabet already has an auxiliary variable");
  if (v.adjoint == AdjointRule::Unitary && v.unitary_order < 1)
    throw UsageError("unitary variable " + v.name + " needs a positive order");
  const auto l = static_cast<Letter>(vars_.size());
  if (v.auxiliary) aux_ = l;
  by_name_.emplace(v.name, l);
  vars_.push_back(std::move(v));
  return l;
}

std::optional<Letter> Alphabet::find(std::string_view name) const {
  auto it = by_name_.find(std::string(name));
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

Letter Alphabet::index(std::string_view name) const {
  if (auto l = find(name)) return *l;
  throw UsageError("unknown variable: " + std::string(name));
}

bool operator==(const Alphabet& a, const Alphabet& b) {
  if (a.vars_.size() != b.vars_.size()) return false;
  for (std::size_t i = 0; i < a.vars_.size(); ++i) {
    const auto& x = a.vars_[i];
    const auto& y = b.vars_[i];
    if (x.name != y.name || x.adjoint != y.adjoint || x.unitary_order != y.unitary_order ||
        x.auxiliary != y.auxiliary)
      return false;
  }
  return true;
}

// ----------------------------------------------------------- MonomialOrder

MonomialOrder::MonomialOrder(const std::vector<Letter>& precedence) : rank_(precedence.size(), -1) {
  for (std::size_t k = 0; k < precedence.size(); ++k) {
    if (precedence[k] >= precedence.size() || rank_[precedence[k]] != -1)
      throw UsageError("monomial order precedence is not a permutation");
    rank_[precedence[k]] = static_cast<int>(k);
  }
}

MonomialOrder MonomialOrder::identity(std::size_t n) {
  std::vector<Letter> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = static_cast<Letter>(i);
  return MonomialOrder(p);
}

std::strong_ordering MonomialOrder::compare(const Word& u, const Word& v) const noexcept {
  if (u.size() != v.size()) return u.size() <=> v.size();
  for (std::size_t i = 0; i < u.size(); ++i)
    if (u[i] != v[i]) return rank_[u[i]] <=> rank_[v[i]];
  return std::strong_ordering::equal;
}

std::vector<Letter> MonomialOrder::precedence() const {
  std::vector<Letter> p(rank_.size());
  for (std::size_t l = 0; l < rank_.size(); ++l) p[rank_[l]] = static_cast<Letter>(l);
  return p;
}

// -------------------------------------------------------------------- Ring

RingPtr make_ring(const CycloField& field, Alphabet alphabet) {
  auto order = MonomialOrder::identity(alphabet.size());
  return make_ring(field, std::move(alphabet), std::move(order));
}

RingPtr make_ring(const CycloField& field, Alphabet alphabet, MonomialOrder order) {
  if (order.size() != alphabet.size()) throw UsageError("monomial order size does not match alphabet");
  if (auto aux = alphabet.auxiliary(); aux && order.rank(*aux) != static_cast<int>(alphabet.size()) - 1)
    throw UsageError("auxiliary variable must be the greatest symbol");
  return std::make_shared<const Ring>(Ring{&field, std::move(alphabet), std::move(order)});
}

RingPtr Ring::with_auxiliary(std::string name) const {
  if (alphabet.auxiliary()) throw UsageError("ring already has an auxiliary variable");
  Alphabet ext = alphabet;
  Variable xi;
  xi.name = std::move(name);
  xi.auxiliary = true;
  ext.add(std::move(xi));
  auto prec = order.precedence();
  prec.push_back(static_cast<Letter>(alphabet.size()));
  return make_ring(*field, std::move(ext), MonomialOrder(prec));
}

bool same_ring(const Ring& a, const Ring& b) {
  return &a == &b || (a.field == b.field && a.order == b.order && a.alphabet == b.alphabet);
}

// ------------------------------------------------------------------ NCPoly

namespace {

void canonicalize(const Ring& ring, std::vector<Term>& terms) {
  const auto& ord = ring.order;
  std::sort(terms.begin(), terms.end(),
            [&](const Term& a, const Term& b) { return ord.compare(a.word, b.word) > 0; });
  std::vector<Term> out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.empty() && out.back().word == t.word) {
      out.back().coeff += t.coeff;
    } else {
      if (!out.empty() && out.back().coeff.is_zero()) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && out.back().coeff.is_zero()) out.pop_back();
  terms = std::move(out);
}

}  // namespace

NCPoly::NCPoly(RingPtr ring, std::vector<Term> terms) : ring_(std::move(ring)), terms_(std::move(terms)) {
  for (const auto& t : terms_)
    if (&t.coeff.field() != ring_->field) throw UsageError("term coefficient from a foreign field");
  canonicalize(*ring_, terms_);
}

NCPoly NCPoly::constant(RingPtr ring, const Cyclo& c) { return monomial(std::move(ring), Word{}, c); }

NCPoly NCPoly::constant(RingPtr ring, long c) {
  const auto& f = *ring->field;
  return monomial(std::move(ring), Word{}, Cyclo(f, Rational(c)));
}

NCPoly NCPoly::monomial(RingPtr ring, Word w, Cyclo c) {
  NCPoly p(std::move(ring));
  for (Letter l : w)
    if (l >= p.ring_->alphabet.size()) throw UsageError("word letter outside the alphabet");
  if (!c.is_zero()) p.terms_.push_back(Term{std::move(w), std::move(c)});
  return p;
}

NCPoly NCPoly::monomial(RingPtr ring, Word w) {
  const auto& f = *ring->field;
  return monomial(std::move(ring), std::move(w), Cyclo::one(f));
}

NCPoly NCPoly::variable(RingPtr ring, std::string_view name) {
  Letter l = ring->alphabet.index(name);
  return monomial(std::move(ring), Word{l});
}

const Word& NCPoly::leading_word() const {
  if (terms_.empty()) throw UsageError("leading word of the zero polynomial");
  return terms_.front().word;
}

const Cyclo& NCPoly::leading_coeff() const {
  if (terms_.empty()) throw UsageError("leading coefficient of the zero polynomial");
  return terms_.front().coeff;
}

std::size_t NCPoly::degree() const noexcept {
  std::size_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.word.size());
  return d;
}

Cyclo NCPoly::coefficient(const Word& w) const {
  for (const auto& t : terms_)
    if (t.word == w) return t.coeff;
  return Cyclo::zero(*ring_->field);
}

void NCPoly::check_ring(const NCPoly& o) const {
  if (!same_ring(*ring_, *o.ring_)) throw UsageError("polynomials over different rings");
}

NCPoly& NCPoly::operator+=(const NCPoly& o) {
  check_ring(o);
  const auto& ord = ring_->order;
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() || j < o.terms_.size()) {
    if (j == o.terms_.size()) {
      out.push_back(std::move(terms_[i++]));
    } else if (i == terms_.size()) {
      out.push_back(o.terms_[j++]);
    } else {
      auto c = ord.compare(terms_[i].word, o.terms_[j].word);
      if (c > 0) {
        out.push_back(std::move(terms_[i++]));
      } else if (c < 0) {
        out.push_back(o.terms_[j++]);
      } else {
        Term t = std::move(terms_[i++]);
        t.coeff += o.terms_[j++].coeff;
        if (!t.coeff.is_zero()) out.push_back(std::move(t));
      }
    }
  }
  terms_ = std::move(out);
  return *this;
}

NCPoly NCPoly::operator-() const {
  NCPoly r(*this);
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

NCPoly& NCPoly::operator-=(const NCPoly& o) { return *this += -o; }

NCPoly& NCPoly::operator*=(const Cyclo& c) {
  if (&c.field() != ring_->field) throw UsageError("scalar from a foreign field");
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.coeff *= c;
  return *this;
}

NCPoly NCPoly::multiply(const NCPoly& o) const {
  check_ring(o);
  std::vector<Term> out;
  out.reserve(terms_.size() * o.terms_.size());
  for (const auto& a : terms_)
    for (const auto& b : o.terms_) out.push_back(Term{a.word * b.word, a.coeff * b.coeff});
  return NCPoly(ring_, std::move(out));
}

NCPoly NCPoly::sandwich(const Word& u, const Word& v) const {
  // Multiplying by words preserves the relative order of terms.
  NCPoly r(ring_);
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.push_back(Term{u * t.word * v, t.coeff});
  return r;
}

Word adjoint_word(const Alphabet& a, const Word& w) {
  std::vector<Letter> out;
  out.reserve(w.size());
  for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it) {
    const auto& v = a[*it];
    if (v.adjoint == AdjointRule::Unitary) {
      for (int k = 0; k < v.unitary_order - 1; ++k) out.push_back(*it);
    } else {
      out.push_back(*it);
    }
  }
  return Word(std::move(out));
}

NCPoly NCPoly::adjoint() const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) out.push_back(Term{adjoint_word(ring_->alphabet, t.word), t.coeff.conj()});
  return NCPoly(ring_, std::move(out));
}

NCPoly NCPoly::monic() const {
  if (is_zero()) return *this;
  if (leading_coeff().is_one()) return *this;
  return *this * leading_coeff().inverse();
}

NCPoly NCPoly::embed(RingPtr target) const {
  if (target->field != ring_->field) throw UsageError("embedding into a ring over another field");
  std::vector<Letter> map(ring_->alphabet.size());
  for (std::size_t l = 0; l < map.size(); ++l)
    map[l] = target->alphabet.index(ring_->alphabet[static_cast<Letter>(l)].name);
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    std::vector<Letter> w;
    w.reserve(t.word.size());
    for (Letter l : t.word) w.push_back(map[l]);
    out.push_back(Term{Word(std::move(w)), t.coeff});
  }
  return NCPoly(std::move(target), std::move(out));
}

bool operator==(const NCPoly& a, const NCPoly& b) {
  if (!same_ring(*a.ring_, *b.ring_) || a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (!(a.terms_[i].word == b.terms_[i].word) || !(a.terms_[i].coeff == b.terms_[i].coeff)) return false;
  return true;
}

std::string word_to_string(const Alphabet& a, const Word& w) {
  if (w.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ' ';
    s += a[w[i]].name;
  }
  return s;
}

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

// Skips whitespace and the word separators '*' and U+00B7.
void skip_separators(std::string_view s, std::size_t& i) {
  while (i < s.size()) {
    if (std::isspace(static_cast<unsigned char>(s[i])) || s[i] == '*') {
      ++i;
    } else if (s.compare(i, 2, "\xC2\xB7") == 0) {
      i += 2;
    } else {
      break;
    }
  }
}

}  // namespace

Word parse_word(const Alphabet& a, std::string_view text) {
  std::size_t i = 0;
  std::vector<Letter> out;
  skip_separators(text, i);
  if (text.substr(i) == "1") return Word{};
  while (i < text.size()) {
    if (!ident_start(text[i])) throw ParseError(0, "bad word '" + std::string(text) + "'");
    std::size_t s = i;
    while (i < text.size() && ident_char(text[i])) ++i;
    auto name = text.substr(s, i - s);
    auto l = a.find(name);
    if (!l) throw ParseError(0, "unknown variable '" + std::string(name) + "'");
    out.push_back(*l);
    skip_separators(text, i);
  }
  return Word(std::move(out));
}

std::string NCPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    const Cyclo& c = t.coeff;
    bool negative = c.is_rational() && c.rational_part() < 0;
    if (first) {
      if (negative) os << '-';
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    if (c.is_rational()) {
      Rational mag = abs(c.rational_part());
      if (t.word.empty()) {
        os << mag.get_str();
        continue;
      }
      if (mag != 1) os << mag.get_str() << ' ';
    } else {
      os << '(' << c.to_string() << ')';
      if (t.word.empty()) continue;
      os << ' ';
    }
    os << word_to_string(ring_->alphabet, t.word);
  }
  return os.str();
}

NCPoly NCPoly::parse(RingPtr ring, std::string_view text) {
  const auto& field = *ring->field;
  std::vector<Term> terms;
  std::size_t i = 0;
  auto ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto fail = [&](const std::string& why) {
    return ParseError(0, "bad polynomial '" + std::string(text) + "': " + why);
  };
  ws();
  if (text.substr(i) == "0") return NCPoly(ring);
  bool first = true;
  while (true) {
    ws();
    if (i == text.size()) break;
    int sign = 1;
    if (text[i] == '+' || text[i] == '-') {
      sign = text[i] == '-' ? -1 : 1;
      ++i;
      ws();
    } else if (!first) {
      throw fail("expected '+' or '-'");
    }
    first = false;
    Cyclo coef = Cyclo::one(field);
    bool have_coef = false;
    std::size_t s = i;
    while (i < text.size() && (std::isdigit(static_cast<unsigned char>(text[i])) || text[i] == '/')) ++i;
    if (i > s) {
      Rational r;
      try {
        r = Rational(std::string(text.substr(s, i - s)));
        r.canonicalize();
      } catch (const std::exception&) {
        throw fail("bad rational coefficient");
      }
      coef = Cyclo(field, r);
      have_coef = true;
      ws();
    }
    if (i < text.size() && text[i] == '(') {
      std::size_t close = text.find(')', i);
      if (close == std::string_view::npos) throw fail("unbalanced '('");
      coef *= Cyclo::parse(field, text.substr(i + 1, close - i - 1));
      i = close + 1;
      have_coef = true;
    }
    skip_separators(text, i);
    std::vector<Letter> letters;
    while (i < text.size() && ident_start(text[i])) {
      std::size_t b = i;
      while (i < text.size() && ident_char(text[i])) ++i;
      auto name = text.substr(b, i - b);
      auto l = ring->alphabet.find(name);
      if (!l) throw fail("unknown variable '" + std::string(name) + "'");
      letters.push_back(*l);
      skip_separators(text, i);
    }
    if (!have_coef && letters.empty()) throw fail("empty term");
    if (sign < 0) coef = -coef;
    terms.push_back(Term{Word(std::move(letters)), std::move(coef)});
  }
  return NCPoly(std::move(ring), std::move(terms));
}

std::ostream& operator<<(std::ostream& os, const NCPoly& p) { return os << p.to_string(); }

}  // namespace ncgame
