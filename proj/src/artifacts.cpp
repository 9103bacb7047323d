#include "ncgame/artifacts.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

#include "ncgame/errors.hpp"

namespace ncgame {

namespace {

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  bool next() {
    std::string s;
    while (std::getline(in_, s)) {
      ++line_;
      auto b = s.find_first_not_of(" \t\r");
      if (b == std::string::npos || s[b] == '#') continue;
      auto e = s.find_last_not_of(" \t\r");
      s = s.substr(b, e - b + 1);
      auto sp = s.find(' ');
      key_ = s.substr(0, sp);
      rest_ = sp == std::string::npos ? "" : s.substr(s.find_first_not_of(' ', sp));
      return true;
    }
    return false;
  }

  void expect(std::string_view k) {
    if (!next()) fail("unexpected end of file, expected '" + std::string(k) + "'");
    if (key_ != k) fail("expected '" + std::string(k) + "', got '" + key_ + "'");
  }

  std::size_t expect_count(std::string_view k) {
    expect(k);
    return to_size(rest_);
  }

  std::size_t to_size(const std::string& s) const {
    try {
      std::size_t pos = 0;
      long v = std::stol(s, &pos);
      if (pos != s.size() || v < 0) throw std::invalid_argument(s);
      return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
      fail("expected a non-negative integer, got '" + s + "'");
    }
  }

  // Splits rest at the first " | " or " : " style separator.
  std::pair<std::string, std::string> split(char sep) const {
    auto p = rest_.find(sep);
    if (p == std::string::npos) fail(std::string("missing '") + sep + "'");
    auto trim = [](std::string s) {
      auto b = s.find_first_not_of(' ');
      if (b == std::string::npos) return std::string();
      return s.substr(b, s.find_last_not_of(' ') - b + 1);
    };
    return {trim(rest_.substr(0, p)), trim(rest_.substr(p + 1))};
  }

  template <class F>
  decltype(auto) guard(F f) const {
    try {
      return f();
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception& e) {
      fail(e.what());
    }
  }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line_, msg); }

  const std::string& key() const { return key_; }
  const std::string& rest() const { return rest_; }

 private:
  std::istream& in_;
  std::size_t line_ = 0;
  std::string key_, rest_;
};

std::vector<std::string> tokens(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  for (std::string t; is >> t;) out.push_back(t);
  return out;
}

void expect_header(LineReader& in, std::string_view kind) {
  in.expect("ncgame-" + std::string(kind));
  if (in.rest() != "1") in.fail("unsupported " + std::string(kind) + " format version '" + in.rest() + "'");
}

RingPtr read_ring(LineReader& in) {
  int order = static_cast<int>(in.expect_count("field"));
  const CycloField& f = in.guard([&]() -> const CycloField& { return CycloField::make(order); });
  Alphabet a;
  std::vector<std::string> names;
  for (;;) {
    if (!in.next()) in.fail("unexpected end of file in ring block");
    if (in.key() == "order") {
      names = tokens(in.rest());
      break;
    }
    if (in.key() != "letter") in.fail("expected 'letter' or 'order', got '" + in.key() + "'");
    auto t = tokens(in.rest());
    if (t.size() != 5) in.fail("usage: letter NAME self|unitary:M|aux PLAYER QUESTION ANSWER");
    Variable v;
    v.name = t[0];
    if (t[1] == "aux") {
      v.auxiliary = true;
    } else if (t[1].rfind("unitary:", 0) == 0) {
      v.adjoint = AdjointRule::Unitary;
      v.unitary_order = static_cast<int>(in.to_size(t[1].substr(8)));
    } else if (t[1] != "self") {
      in.fail("unknown letter kind '" + t[1] + "'");
    }
    auto num = [&](const std::string& s) { return s == "-" ? -1 : static_cast<int>(in.to_size(s)); };
    v.player = num(t[2]);
    v.question = num(t[3]);
    v.answer = num(t[4]);
    in.guard([&] { return a.add(std::move(v)); });
  }
  if (names.size() != a.size()) in.fail("order must list every letter once");
  std::vector<Letter> prec;
  for (const auto& n : names) prec.push_back(in.guard([&] { return a.index(n); }));
  std::vector<Letter> sorted = prec;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) in.fail("order lists a letter twice");
  return make_ring(f, std::move(a), MonomialOrder(prec));
}

NCPoly read_poly(LineReader& in, const RingPtr& ring, std::string_view key) {
  in.expect(key);
  return in.guard([&] { return NCPoly::parse(ring, in.rest()); });
}

Cyclo read_cyclo(const LineReader& in, const RingPtr& ring, const std::string& text) {
  return in.guard([&] { return Cyclo::parse(*ring->field, text); });
}

Word read_word(const LineReader& in, const RingPtr& ring, const std::string& text) {
  return in.guard([&] { return parse_word(ring->alphabet, text); });
}

Rational read_rational(const LineReader& in, const std::string& s) {
  return in.guard([&] {
    Rational q(s);
    q.canonicalize();
    return q;
  });
}

// ------------------------------------------------------------ basis body

void write_basis_body(std::ostream& os, const RewriteSystem& r) {
  const Ring& ring = *r.ring();
  write_ring(os, ring);
  os << "cap " << r.cap() << '\n';
  os << "status " << (r.is_complete() ? "complete" : "truncated") << '\n';

  std::shared_ptr<const Derivation> d = r.derivation();
  std::vector<std::size_t> idx;
  if (d) {
    for (std::size_t i = 0; i < r.rules().size(); ++i) idx.push_back(r.rule_entry(i));
  } else {
    auto own = std::make_shared<Derivation>();
    for (std::size_t i = 0; i < r.rules().size(); ++i) {
      own->generators.push_back(r.rules()[i]);
      own->entries.push_back({r.rules()[i], {{Cyclo::one(*ring.field), Word{}, -static_cast<long>(i) - 1, Word{}}}});
      idx.push_back(i);
    }
    d = own;
  }
  os << "generators " << d->generators.size() << '\n';
  for (const auto& g : d->generators) os << "gen " << g.to_string() << '\n';
  os << "entries " << d->entries.size() << '\n';
  for (const auto& e : d->entries) {
    os << "entry " << e.poly.to_string() << '\n';
    os << "steps " << e.steps.size() << '\n';
    for (const auto& s : e.steps)
      os << "step " << s.coeff.to_string() << " | " << word_to_string(ring.alphabet, s.left) << " | " << s.source
         << " | " << word_to_string(ring.alphabet, s.right) << '\n';
  }
  os << "rules " << idx.size() << '\n';
  for (std::size_t i = 0; i < idx.size(); ++i) os << "rule " << idx[i] << " : " << r.rules()[i].to_string() << '\n';
}

std::shared_ptr<const RewriteSystem> read_basis_body(LineReader& in) {
  RingPtr ring = read_ring(in);
  std::size_t cap = in.expect_count("cap");
  in.expect("status");
  if (in.rest() != "complete" && in.rest() != "truncated") in.fail("status must be complete or truncated");
  auto status = in.rest() == "complete" ? CompletionStatus::Complete : CompletionStatus::Truncated;

  auto d = std::make_shared<Derivation>();
  std::size_t ng = in.expect_count("generators");
  for (std::size_t i = 0; i < ng; ++i) d->generators.push_back(read_poly(in, ring, "gen"));
  std::size_t ne = in.expect_count("entries");
  for (std::size_t i = 0; i < ne; ++i) {
    DerivationEntry e{read_poly(in, ring, "entry"), {}};
    std::size_t ns = in.expect_count("steps");
    for (std::size_t j = 0; j < ns; ++j) {
      in.expect("step");
      std::vector<std::string> parts;
      std::string rest = in.rest();
      for (std::size_t p; (p = rest.find(" | ")) != std::string::npos; rest.erase(0, p + 3))
        parts.push_back(rest.substr(0, p));
      parts.push_back(rest);
      if (parts.size() != 4) in.fail("usage: step COEFF | LEFT | SOURCE | RIGHT");
      long src = in.guard([&] {
        std::size_t pos = 0;
        long v = std::stol(parts[2], &pos);
        if (pos != parts[2].size()) throw std::invalid_argument("bad step source '" + parts[2] + "'");
        return v;
      });
      e.steps.push_back({read_cyclo(in, ring, parts[0]), read_word(in, ring, parts[1]), src,
                         read_word(in, ring, parts[3])});
    }
    d->entries.push_back(std::move(e));
  }
  std::size_t nr = in.expect_count("rules");
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < nr; ++i) {
    in.expect("rule");
    auto [k, text] = in.split(':');
    std::size_t entry = in.to_size(k);
    if (entry >= d->entries.size()) in.fail("rule cites a missing entry");
    NCPoly p = in.guard([&] { return NCPoly::parse(ring, text); });
    if (!(p == d->entries[entry].poly)) in.fail("rule text differs from entry " + k);
    idx.push_back(entry);
  }
  return in.guard([&] {
    return std::make_shared<const RewriteSystem>(RewriteSystem::from_derivation(d, std::move(idx), status, cap));
  });
}

std::vector<ToricClause> read_clauses(LineReader& in, const RingPtr& ring, std::size_t n) {
  std::vector<ToricClause> out;
  for (std::size_t i = 0; i < n; ++i) {
    in.expect("clause");
    auto [b, w] = in.split('|');
    out.push_back({read_cyclo(in, ring, b), read_word(in, ring, w)});
  }
  return out;
}

void write_clause(std::ostream& os, const Ring& r, const ToricClause& c) {
  os << "clause " << c.beta.to_string() << " | " << word_to_string(r.alphabet, c.word) << '\n';
}

// ------------------------------------------------------------ verification helpers

std::vector<std::string> sorted_strings(const std::vector<NCPoly>& ps) {
  std::vector<std::string> out;
  for (const auto& p : ps) out.push_back(p.to_string());
  std::sort(out.begin(), out.end());
  return out;
}

bool same_set(const std::vector<NCPoly>& a, const std::vector<NCPoly>& b) {
  return sorted_strings(a) == sorted_strings(b);
}

// Every letter of w is forced unitary by one of `rels` (l l - 1 or l^m - 1).
std::optional<std::string> unitary_gap(const RingPtr& ring, const Word& w, const std::vector<NCPoly>& rels) {
  const auto& one = Cyclo::one(*ring->field);
  for (Letter l : w) {
    const auto& v = ring->alphabet[l];
    std::size_t m = v.adjoint == AdjointRule::Unitary ? static_cast<std::size_t>(v.unitary_order) : 2;
    if (v.auxiliary) return "auxiliary letter in a clause";
    NCPoly want = NCPoly::monomial(ring, Word(std::vector<Letter>(m, l)), one) - NCPoly::constant(ring, 1);
    if (std::none_of(rels.begin(), rels.end(), [&](const NCPoly& r) { return r == want; }))
      return "no relation " + want.to_string() + " making " + v.name + " unitary";
  }
  return std::nullopt;
}

bool is_left_generator(const NCPoly& p, Letter xi) {
  for (const auto& t : p.terms()) {
    if (t.word.empty() || t.word.back() != xi) return false;
    if (std::count(t.word.begin(), t.word.end(), xi) != 1) return false;
  }
  return true;
}

bool xi_free(const NCPoly& p, Letter xi) {
  for (const auto& t : p.terms())
    if (std::find(t.word.begin(), t.word.end(), xi) != t.word.end()) return false;
  return true;
}

void check_derivation_of(const RewriteSystem& r, VerifyResult& v) {
  if (auto bad = check_derivation(*r.derivation())) {
    v.ok = false;
    v.messages.push_back("derivation entry " + std::to_string(*bad) + " does not expand to its polynomial");
  } else {
    v.messages.push_back("derivation of " + std::to_string(r.derivation()->entries.size()) + " entries checks out");
  }
}

std::vector<NCPoly> reparse(const std::vector<NCPoly>& ps, const RingPtr& ring) {
  std::vector<NCPoly> out;
  for (const auto& p : ps) out.push_back(p.embed(ring));
  return out;
}

// The artifact can only speak about the game if it uses the game's letters and field.
bool covers(const Ring& game, const Ring& art) {
  if (game.field != art.field) return false;
  return std::all_of(game.alphabet.variables().begin(), game.alphabet.variables().end(),
                     [&](const Variable& v) { return art.alphabet.find(v.name).has_value(); });
}

}  // namespace

// ------------------------------------------------------------ ring

void write_ring(std::ostream& os, const Ring& r) {
  os << "field " << r.field->order() << '\n';
  auto num = [](int x) { return x < 0 ? std::string("-") : std::to_string(x); };
  for (const auto& v : r.alphabet.variables()) {
    os << "letter " << v.name << ' ';
    if (v.auxiliary)
      os << "aux";
    else if (v.adjoint == AdjointRule::Unitary)
      os << "unitary:" << v.unitary_order;
    else
      os << "self";
    os << ' ' << num(v.player) << ' ' << num(v.question) << ' ' << num(v.answer) << '\n';
  }
  os << "order";
  for (Letter l : r.order.precedence()) os << ' ' << r.alphabet[l].name;
  os << '\n';
}

// ------------------------------------------------------------ basis

void write_basis(std::ostream& os, const RewriteSystem& r, const std::optional<NCPoly>& target) {
  os << "ncgame-basis 1\n";
  write_basis_body(os, r);
  if (target) os << "target " << target->to_string() << '\n';
  os << "end\n";
}

BasisFile read_basis(std::istream& is) {
  LineReader in(is);
  expect_header(in, "basis");
  BasisFile b{read_basis_body(in), std::nullopt};
  if (!in.next()) in.fail("missing 'end'");
  if (in.key() == "target") {
    b.target = in.guard([&] { return NCPoly::parse(b.system->ring(), in.rest()); });
    in.expect("end");
  } else if (in.key() != "end") {
    in.fail("expected 'target' or 'end', got '" + in.key() + "'");
  }
  return b;
}

// ------------------------------------------------------------ strategy

void write_strategy(std::ostream& os, const StrategyFile& w) {
  const Strategy& s = w.strategy;
  const Ring& ring = *s.ring;
  os << "ncgame-strategy 1\n";
  write_ring(os, ring);
  os << "dimension " << s.dimension() << '\n';
  os << "basis " << s.basis.size() << '\n';
  for (const auto& b : s.basis) os << "word " << word_to_string(ring.alphabet, b) << '\n';
  os << "states " << s.state.size() << '\n';
  for (const auto& [i, c] : s.state) os << "state " << i << " : " << c.to_string() << '\n';
  for (std::size_t l = 0; l < ring.alphabet.size(); ++l) {
    if (ring.alphabet[static_cast<Letter>(l)].auxiliary) continue;
    const auto& m = s.matrices[l];
    std::size_t nnz = 0;
    for (std::size_t c = 0; c < m.dimension(); ++c) nnz += m.column(c).size();
    os << "matrix " << ring.alphabet[static_cast<Letter>(l)].name << ' ' << nnz << '\n';
    for (std::size_t c = 0; c < m.dimension(); ++c)
      for (const auto& [r, v] : m.column(c)) os << "at " << r << ' ' << c << " : " << v.to_string() << '\n';
  }
  os << "relations " << w.relations.size() << '\n';
  for (const auto& p : w.relations) os << "rel " << p.to_string() << '\n';
  os << "elements " << w.elements.size() << '\n';
  for (const auto& p : w.elements) os << "elem " << p.to_string() << '\n';
  os << "end\n";
}

StrategyFile read_strategy(std::istream& is) {
  LineReader in(is);
  expect_header(in, "strategy");
  StrategyFile w;
  Strategy& s = w.strategy;
  s.ring = read_ring(in);
  const auto& f = *s.ring->field;
  std::size_t dim = in.expect_count("dimension");
  std::size_t nb = in.expect_count("basis");
  if (nb != 0 && nb != dim) in.fail("basis must be empty or list one word per dimension");
  for (std::size_t i = 0; i < nb; ++i) {
    in.expect("word");
    s.basis.push_back(read_word(in, s.ring, in.rest()));
  }
  std::size_t ns = in.expect_count("states");
  for (std::size_t i = 0; i < ns; ++i) {
    in.expect("state");
    auto [k, v] = in.split(':');
    std::size_t idx = in.to_size(k);
    if (idx >= dim) in.fail("state index out of range");
    s.state.insert_or_assign(idx, read_cyclo(in, s.ring, v));
  }
  for (std::size_t l = 0; l < s.ring->alphabet.size(); ++l) {
    const auto& var = s.ring->alphabet[static_cast<Letter>(l)];
    if (var.auxiliary) {
      s.matrices.emplace_back();
      continue;
    }
    in.expect("matrix");
    auto t = tokens(in.rest());
    if (t.size() != 2 || t[0] != var.name) in.fail("expected 'matrix " + var.name + " NNZ'");
    std::size_t nnz = in.to_size(t[1]);
    CycloMatrix m(f, dim);
    for (std::size_t i = 0; i < nnz; ++i) {
      in.expect("at");
      auto [rc, v] = in.split(':');
      auto p = tokens(rc);
      if (p.size() != 2) in.fail("usage: at ROW COL : VALUE");
      std::size_t r = in.to_size(p[0]), c = in.to_size(p[1]);
      if (r >= dim || c >= dim) in.fail("matrix index out of range");
      m.set(r, c, read_cyclo(in, s.ring, v));
    }
    s.matrices.push_back(std::move(m));
  }
  std::size_t nr = in.expect_count("relations");
  for (std::size_t i = 0; i < nr; ++i) w.relations.push_back(read_poly(in, s.ring, "rel"));
  std::size_t ne = in.expect_count("elements");
  for (std::size_t i = 0; i < ne; ++i) w.elements.push_back(read_poly(in, s.ring, "elem"));
  in.expect("end");
  return w;
}

// ------------------------------------------------------------ sos

void write_sos(std::ostream& os, const RationalCertificate& c) {
  const Ring& ring = *c.system->ring();
  os << "ncgame-sos 1\n";
  write_basis_body(os, *c.system);
  os << "degree " << c.degree << '\n';
  os << "words " << c.words.size() << '\n';
  for (const auto& w : c.words) os << "word " << word_to_string(ring.alphabet, w) << '\n';
  os << "gram\n";
  for (const auto& row : c.M) {
    os << "row";
    for (const auto& q : row) os << ' ' << q.get_str();
    os << '\n';
  }
  os << "terms " << c.terms.size() << '\n';
  for (const auto& t : c.terms) {
    os << "term " << t.weight.get_str();
    for (const auto& [i, q] : t.coeffs) os << ' ' << i << ' ' << q.get_str();
    os << '\n';
  }
  os << "denominator " << c.denominator << '\n';
  os << "end\n";
}

RationalCertificate read_sos(std::istream& is) {
  LineReader in(is);
  expect_header(in, "sos");
  RationalCertificate c;
  c.system = read_basis_body(in);
  const RingPtr& ring = c.system->ring();
  c.degree = in.expect_count("degree");
  std::size_t n = in.expect_count("words");
  for (std::size_t i = 0; i < n; ++i) {
    in.expect("word");
    c.words.push_back(read_word(in, ring, in.rest()));
  }
  in.expect("gram");
  for (std::size_t i = 0; i < n; ++i) {
    in.expect("row");
    auto t = tokens(in.rest());
    if (t.size() != n) in.fail("gram row needs " + std::to_string(n) + " entries");
    std::vector<Rational> row;
    for (const auto& s : t) row.push_back(read_rational(in, s));
    c.M.push_back(std::move(row));
  }
  std::size_t nt = in.expect_count("terms");
  for (std::size_t i = 0; i < nt; ++i) {
    in.expect("term");
    auto t = tokens(in.rest());
    if (t.empty() || t.size() % 2 != 1) in.fail("usage: term WEIGHT IDX VALUE ...");
    SosTerm term{read_rational(in, t[0]), {}};
    for (std::size_t k = 1; k < t.size(); k += 2) {
      std::size_t idx = in.to_size(t[k]);
      if (idx >= n) in.fail("term index out of range");
      if (!term.coeffs.empty() && term.coeffs.back().first >= idx) in.fail("term indices must increase");
      term.coeffs.emplace_back(idx, read_rational(in, t[k + 1]));
    }
    c.terms.push_back(std::move(term));
  }
  c.denominator = static_cast<long>(in.expect_count("denominator"));
  in.expect("end");
  return c;
}

// ------------------------------------------------------------ obstructions

void write_norm(std::ostream& os, const NormFile& n) {
  os << "ncgame-norm 1\n";
  write_ring(os, *n.ring);
  write_clause(os, *n.ring, n.clause);
  os << "norm " << n.clause.beta.norm_squared().to_string() << '\n';
  os << "relations " << n.relations.size() << '\n';
  for (const auto& p : n.relations) os << "rel " << p.to_string() << '\n';
  os << "end\n";
}

NormFile read_norm(std::istream& is) {
  LineReader in(is);
  expect_header(in, "norm");
  RingPtr ring = read_ring(in);
  NormFile n{ring, read_clauses(in, ring, 1).front(), {}};
  in.expect("norm");
  std::size_t nr = in.expect_count("relations");
  for (std::size_t i = 0; i < nr; ++i) n.relations.push_back(read_poly(in, n.ring, "rel"));
  in.expect("end");
  return n;
}

void write_phase(std::ostream& os, const PhaseFile& p) {
  const Ring& ring = *p.universal->ring();
  os << "ncgame-phase 1\n";
  write_basis_body(os, *p.universal);
  os << "clauses " << p.clauses.size() << '\n';
  for (const auto& c : p.clauses) write_clause(os, ring, c);
  os << "factors " << p.obstruction.factors.size() << '\n';
  for (const auto& [i, inv] : p.obstruction.factors) os << "factor " << i << (inv ? " inverse" : " forward") << '\n';
  os << "phase " << p.obstruction.phase.to_string() << '\n';
  os << "end\n";
}

PhaseFile read_phase(std::istream& is) {
  LineReader in(is);
  expect_header(in, "phase");
  auto universal = read_basis_body(in);
  const RingPtr& ring = universal->ring();
  PhaseFile p{universal, read_clauses(in, ring, in.expect_count("clauses")), {{}, Cyclo::one(*ring->field)}};
  std::size_t nf = in.expect_count("factors");
  for (std::size_t i = 0; i < nf; ++i) {
    in.expect("factor");
    auto t = tokens(in.rest());
    if (t.size() != 2 || (t[1] != "inverse" && t[1] != "forward")) in.fail("usage: factor IDX forward|inverse");
    std::size_t idx = in.to_size(t[0]);
    if (idx >= p.clauses.size()) in.fail("factor cites a missing clause");
    p.obstruction.factors.emplace_back(idx, t[1] == "inverse");
  }
  in.expect("phase");
  p.obstruction.phase = read_cyclo(in, ring, in.rest());
  in.expect("end");
  return p;
}

// ------------------------------------------------------------ verify

std::string to_string(ArtifactKind k) {
  switch (k) {
    case ArtifactKind::Basis: return "basis";
    case ArtifactKind::Strategy: return "strategy";
    case ArtifactKind::Sos: return "sos";
    case ArtifactKind::Norm: return "norm";
    case ArtifactKind::Phase: return "phase";
  }
  return "?";
}

VerifyResult verify_artifact(std::istream& is, const ArtifactContext* ctx) {
  std::string text((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
  std::istringstream head(text);
  std::string first;
  while (std::getline(head, first)) {
    auto b = first.find_first_not_of(" \t\r");
    if (b != std::string::npos && first[b] != '#') break;
  }
  std::istringstream body(text);
  VerifyResult v;
  v.ok = true;
  auto fail = [&](std::string m) {
    v.ok = false;
    v.messages.push_back(std::move(m));
  };

  if (first.rfind("ncgame-basis", 0) == 0) {
    v.kind = ArtifactKind::Basis;
    BasisFile b = read_basis(body);
    const RewriteSystem& r = *b.system;
    check_derivation_of(r, v);
    auto xi = r.ring()->alphabet.auxiliary();
    if (ctx && !covers(*ctx->ring, *r.ring()))
      fail("artifact ring does not match the game's letters and field");
    else if (ctx) {
      std::vector<NCPoly> want;
      if (ctx->mixed && xi) {
        for (const auto& p : ctx->relations) want.push_back(p.embed(r.ring()));
        NCPoly x = NCPoly::monomial(r.ring(), Word{*xi}, Cyclo::one(*r.ring()->field));
        for (const auto& p : ctx->elements) want.push_back(p.embed(r.ring()) * x);
      } else {
        want = reparse(ctx->relations, r.ring());
        for (const auto& p : ctx->elements) want.push_back(p.embed(r.ring()));
      }
      if (same_set(want, r.derivation()->generators))
        v.messages.push_back("generators match the game");
      else
        fail("generators differ from the game's");
    }
    if (!b.target) {
      v.attested = Outcome::Unknown;
      v.messages.push_back(std::to_string(r.rules().size()) + " rules, no target");
    } else {
      NCPoly nf = r.normal_form(*b.target);
      if (!nf.is_zero()) {
        fail("target does not reduce to 0 (normal form " + nf.to_string() + ")");
      } else {
        v.messages.push_back("target " + b.target->to_string() + " reduces to 0");
      }
      bool target_xi = xi && *b.target == NCPoly::monomial(r.ring(), Word{*xi}, Cyclo::one(*r.ring()->field));
      bool target_one = *b.target == NCPoly::constant(r.ring(), 1);
      if (target_xi) {
        for (const auto& g : r.derivation()->generators)
          if (!xi_free(g, *xi) && !is_left_generator(g, *xi))
            fail("generator " + g.to_string() + " is neither xi-free nor of the form b xi");
      } else if (!target_one) {
        fail("target must be xi or 1");
      }
      v.attested = Outcome::NoPerfect;
    }
  } else if (first.rfind("ncgame-strategy", 0) == 0) {
    v.kind = ArtifactKind::Strategy;
    StrategyFile w = read_strategy(body);
    if (w.strategy.state.empty()) fail("state vector is zero");
    auto rep = verify_strategy(w.strategy, w.relations, w.elements);
    for (auto& f : rep.failures) fail(f);
    for (auto& f : rep.warnings) fail(f);
    if (rep.pass && rep.warnings.empty())
      v.messages.push_back("dimension " + std::to_string(w.strategy.dimension()) + ": " +
                           std::to_string(w.relations.size()) + " relations and " +
                           std::to_string(w.elements.size()) + " elements hold exactly");
    if (ctx && !covers(*ctx->ring, *w.strategy.ring))
      fail("artifact ring does not match the game's letters and field");
    else if (ctx) {
      if (same_set(reparse(ctx->relations, w.strategy.ring), w.relations) &&
          same_set(reparse(ctx->elements, w.strategy.ring), w.elements))
        v.messages.push_back("relations and elements match the game");
      else
        fail("relations or elements differ from the game's");
    }
    v.attested = Outcome::Perfect;
  } else if (first.rfind("ncgame-sos", 0) == 0) {
    v.kind = ArtifactKind::Sos;
    RationalCertificate c = read_sos(body);
    check_derivation_of(*c.system, v);
    auto chk = check_certificate(c);
    if (chk.ok)
      v.messages.push_back(chk.detail);
    else
      fail(chk.detail);
    if (ctx && !covers(*ctx->ring, *c.system->ring()))
      fail("artifact ring does not match the game's letters and field");
    else if (ctx) {
      if (same_set(reparse(ctx->relations, c.system->ring()), c.system->derivation()->generators))
        v.messages.push_back("generators match the problem");
      else
        fail("generators differ from the problem's");
    }
    v.attested = Outcome::NoPerfect;
  } else if (first.rfind("ncgame-norm", 0) == 0) {
    v.kind = ArtifactKind::Norm;
    NormFile n = read_norm(body);
    Cyclo ns = n.clause.beta.norm_squared();
    if (ns.is_one())
      fail("clause scalar has modulus 1");
    else
      v.messages.push_back("|beta|^2 = " + ns.to_string() + " != 1");
    if (auto gap = unitary_gap(n.ring, n.clause.word, n.relations)) fail(*gap);
    if (ctx && !covers(*ctx->ring, *n.ring))
      fail("artifact ring does not match the game's letters and field");
    else if (ctx) {
      bool listed = ctx->toric && std::any_of(ctx->toric->begin(), ctx->toric->end(), [&](const ToricClause& c) {
                      return c.beta == n.clause.beta && word_to_string(ctx->ring->alphabet, c.word) ==
                                                            word_to_string(n.ring->alphabet, n.clause.word);
                    });
      if (listed && same_set(reparse(ctx->relations, n.ring), n.relations))
        v.messages.push_back("clause and relations match the game");
      else
        fail("clause or relations differ from the game's");
    }
    v.attested = Outcome::NoPerfect;
  } else if (first.rfind("ncgame-phase", 0) == 0) {
    v.kind = ArtifactKind::Phase;
    PhaseFile p = read_phase(body);
    const RewriteSystem& r = *p.universal;
    const RingPtr& ring = r.ring();
    check_derivation_of(r, v);
    const auto& gens = r.derivation()->generators;
    Cyclo beta = Cyclo::one(*ring->field);
    Word w;
    for (const auto& [i, inv] : p.obstruction.factors) {
      const auto& c = p.clauses[i];
      if (!c.beta.norm_squared().is_one()) fail("clause " + std::to_string(i) + " scalar has modulus != 1");
      if (auto gap = unitary_gap(ring, c.word, gens)) fail(*gap);
      beta *= inv ? c.beta.conj() : c.beta;
      w *= inv ? adjoint_word(ring->alphabet, c.word) : c.word;
    }
    NCPoly nf = r.normal_form(NCPoly::monomial(ring, w, beta));
    if (!(nf == NCPoly::constant(ring, p.obstruction.phase)))
      fail("product reduces to " + nf.to_string() + ", not the stated phase");
    else if (p.obstruction.phase.is_one())
      fail("stated phase is 1");
    else
      v.messages.push_back("product of " + std::to_string(p.obstruction.factors.size()) + " clauses reduces to " +
                           p.obstruction.phase.to_string());
    if (ctx && !covers(*ctx->ring, *ring))
      fail("artifact ring does not match the game's letters and field");
    else if (ctx) {
      bool same = ctx->toric && ctx->toric->size() == p.clauses.size();
      for (std::size_t i = 0; same && i < p.clauses.size(); ++i)
        same = (*ctx->toric)[i].beta == p.clauses[i].beta &&
               word_to_string(ring->alphabet, p.clauses[i].word) ==
                   word_to_string(ctx->ring->alphabet, (*ctx->toric)[i].word);
      if (same && same_set(reparse(ctx->relations, ring), gens))
        v.messages.push_back("clauses and relations match the game");
      else
        fail("clauses or relations differ from the game's");
    }
    v.attested = Outcome::NoPerfect;
  } else {
    throw ParseError(1, "unknown artifact header '" + first + "'");
  }
  return v;
}

}  // namespace ncgame
