#include "ncgame/gamealg.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "ncgame/errors.hpp"

namespace ncgame {

std::string to_string(Dialect d) {
  switch (d) {
    case Dialect::Projector: return "projector";
    case Dialect::Signature: return "signature";
    case Dialect::CyclicUnitary: return "cyclic";
  }
  return "?";
}

Dialect parse_dialect(std::string_view s) {
  if (s == "projector") return Dialect::Projector;
  if (s == "signature") return Dialect::Signature;
  if (s == "cyclic") return Dialect::CyclicUnitary;
  throw UsageError("unknown dialect '" + std::string(s) + "' (expected projector, signature or cyclic)");
}

namespace {

void check_shape(const GameShape& s) {
  if (s.players < 1 || s.questions < 1 || s.answers < 1)
    throw UsageError("game shape needs k, n, m >= 1");
}

bool one_letter_per_question(Dialect d, const GameShape& s) {
  return d == Dialect::CyclicUnitary || (d == Dialect::Signature && s.answers == 2);
}

std::string player_letter(int alpha, int players) {
  static const char* names[] = {"x", "y", "z"};
  if (players <= 3) return names[alpha];
  return "u" + std::to_string(alpha + 1) + "_";
}

NCPoly commutator(const RingPtr& ring, Letter u, Letter v) {
  return NCPoly::monomial(ring, Word{u, v}) - NCPoly::monomial(ring, Word{v, u});
}

std::vector<NCPoly> cross_player_commutators(const RingPtr& ring) {
  std::vector<NCPoly> out;
  const auto& vars = ring->alphabet.variables();
  for (std::size_t u = 0; u < vars.size(); ++u)
    for (std::size_t v = u + 1; v < vars.size(); ++v)
      if (vars[u].player != vars[v].player)
        out.push_back(commutator(ring, static_cast<Letter>(u), static_cast<Letter>(v)));
  return out;
}

Cyclo root_of_unity_power(const CycloField& f, int r, long s) {
  // exp(-2 pi i s / r) = zeta_N^(-s N / r)
  if (f.order() % r != 0) throw UsageError("field order is not a multiple of r");
  return Cyclo::root(f, -s * (f.order() / r));
}

}  // namespace

int field_order_for(Dialect d, const GameShape& shape) {
  if (d == Dialect::CyclicUnitary) return std::lcm(shape.answers, 4);
  return 4;
}

Letter UniversalAlgebra::generator(int player, int question, int answer) const {
  if (player < 0 || player >= shape.players || question < 0 || question >= shape.questions)
    throw UsageError("generator index out of range");
  const int n = shape.questions, m = shape.answers;
  int idx = 0;
  if (one_letter_per_question(dialect, shape)) {
    idx = player * n + question;
  } else {
    if (answer < 0 || answer >= m) throw UsageError("answer index out of range");
    idx = (player * n + question) * m + answer;
  }
  if (static_cast<std::size_t>(idx) >= ring->alphabet.size()) throw UsageError("generator index out of range");
  return static_cast<Letter>(idx);
}

UniversalAlgebra universal_relations(const GameShape& shape, Dialect dialect) {
  check_shape(shape);
  const int k = shape.players, n = shape.questions, m = shape.answers;
  Alphabet alpha;
  for (int p = 0; p < k; ++p)
    for (int i = 0; i < n; ++i) {
      if (one_letter_per_question(dialect, shape)) {
        Variable v;
        v.name = player_letter(p, k) + std::to_string(i);
        v.player = p;
        v.question = i;
        if (dialect == Dialect::CyclicUnitary && m != 2) {
          v.adjoint = AdjointRule::Unitary;
          v.unitary_order = m;
        }
        alpha.add(std::move(v));
        continue;
      }
      for (int a = 0; a < m; ++a) {
        Variable v;
        if (dialect == Dialect::Projector) {
          v.name = "e" + std::to_string(p + 1) + "_q" + std::to_string(i) + "_a" + std::to_string(a);
        } else {
          v.name = player_letter(p, k) + std::to_string(i) + "_a" + std::to_string(a);
        }
        v.player = p;
        v.question = i;
        v.answer = a;
        alpha.add(std::move(v));
      }
    }
  UniversalAlgebra U;
  U.shape = shape;
  U.dialect = dialect;
  U.ring = make_ring(CycloField::make(field_order_for(dialect, shape)), std::move(alpha));
  const RingPtr& R = U.ring;
  auto one = NCPoly::constant(R, 1);
  auto mono = [&](Word w) { return NCPoly::monomial(R, std::move(w)); };

  for (int p = 0; p < k; ++p)
    for (int i = 0; i < n; ++i) {
      if (one_letter_per_question(dialect, shape)) {
        Letter c = U.generator(p, i);
        std::vector<Letter> pw(static_cast<std::size_t>(m), c);
        U.relations.push_back(mono(Word(pw)) - one);
        continue;
      }
      if (dialect == Dialect::Projector) {
        NCPoly sum(R);
        for (int a = 0; a < m; ++a) {
          Letter e = U.generator(p, i, a);
          U.relations.push_back(mono(Word{e, e}) - mono(Word{e}));
          sum += mono(Word{e});
        }
        for (int a = 0; a < m; ++a)
          for (int b = 0; b < m; ++b)
            if (a != b) U.relations.push_back(mono(Word{U.generator(p, i, a), U.generator(p, i, b)}));
        U.relations.push_back(sum - one);
      } else {
        // signature generators x = 2e - 1, m > 2
        NCPoly sum(R);
        for (int a = 0; a < m; ++a) {
          Letter x = U.generator(p, i, a);
          U.relations.push_back(mono(Word{x, x}) - one);
          sum += mono(Word{x});
        }
        for (int a = 0; a < m; ++a)
          for (int b = 0; b < m; ++b)
            if (a != b) {
              auto xa = mono(Word{U.generator(p, i, a)}) + one;
              auto xb = mono(Word{U.generator(p, i, b)}) + one;
              U.relations.push_back(xa * xb);
            }
        U.relations.push_back(sum + NCPoly::constant(R, m - 2));
      }
    }
  for (auto& c : cross_player_commutators(R)) U.relations.push_back(std::move(c));
  return U;
}

// ------------------------------------------------------------------ tables

void validate(const GameTable& t) {
  check_shape(t.shape);
  if (t.valid.size() != t.questions.size()) throw UsageError("game table: one valid set per question required");
  std::set<std::vector<int>> seen;
  for (std::size_t q = 0; q < t.questions.size(); ++q) {
    const auto& qv = t.questions[q];
    if (static_cast<int>(qv.size()) != t.shape.players) throw UsageError("game table: question arity != k");
    for (int i : qv)
      if (i < 0 || i >= t.shape.questions) throw UsageError("game table: question index out of range");
    if (!seen.insert(qv).second) throw UsageError("game table: repeated question vector");
    for (const auto& a : t.valid[q]) {
      if (static_cast<int>(a.size()) != t.shape.players) throw UsageError("game table: answer arity != k");
      for (int x : a)
        if (x < 0 || x >= t.shape.answers) throw UsageError("game table: answer index out of range");
    }
  }
}

std::vector<std::vector<int>> invalid_responses(const GameTable& t, std::size_t q) {
  std::set<std::vector<int>> good(t.valid[q].begin(), t.valid[q].end());
  std::vector<std::vector<int>> out;
  std::vector<int> a(static_cast<std::size_t>(t.shape.players), 0);
  while (true) {
    if (!good.count(a)) out.push_back(a);
    int p = t.shape.players - 1;
    while (p >= 0 && ++a[static_cast<std::size_t>(p)] == t.shape.answers) a[static_cast<std::size_t>(p--)] = 0;
    if (p < 0) break;
  }
  return out;
}

namespace {

Word projector_product(const UniversalAlgebra& U, const std::vector<int>& q, const std::vector<int>& a) {
  std::vector<Letter> w;
  for (std::size_t p = 0; p < q.size(); ++p) w.push_back(U.generator(static_cast<int>(p), q[p], a[p]));
  return Word(std::move(w));
}

}  // namespace

DeterminingSet detset_from_table(const GameTable& t, ResponseSet which) {
  validate(t);
  DeterminingSet d{universal_relations(t.shape, Dialect::Projector), {}, std::nullopt};
  const RingPtr& R = d.algebra.ring;
  for (std::size_t q = 0; q < t.questions.size(); ++q) {
    if (which == ResponseSet::Valid) {
      NCPoly s(R);
      for (const auto& a : t.valid[q]) s += NCPoly::monomial(R, projector_product(d.algebra, t.questions[q], a));
      d.elements.push_back(s - NCPoly::constant(R, 1));
    } else {
      for (const auto& a : invalid_responses(t, q))
        d.elements.push_back(NCPoly::monomial(R, projector_product(d.algebra, t.questions[q], a)));
    }
  }
  return d;
}

NCPoly game_polynomial(const GameTable& t, const UniversalAlgebra& U) {
  validate(t);
  if (U.dialect != Dialect::Projector || !(U.shape == t.shape))
    throw UsageError("game_polynomial needs the projector algebra of the table's shape");
  NCPoly s(U.ring);
  for (std::size_t q = 0; q < t.questions.size(); ++q)
    for (const auto& a : t.valid[q]) s += NCPoly::monomial(U.ring, projector_product(U, t.questions[q], a));
  if (t.questions.empty()) return s;
  return s * Cyclo(*U.ring->field, Rational(1, static_cast<long>(t.questions.size())));
}

// ------------------------------------------------------------ toric games

namespace {

DeterminingSet toric_set(UniversalAlgebra U, std::vector<ToricClause> clauses) {
  DeterminingSet d{std::move(U), {}, std::nullopt};
  const RingPtr& R = d.algebra.ring;
  for (const auto& c : clauses) d.elements.push_back(NCPoly::monomial(R, c.word, c.beta) - NCPoly::constant(R, 1));
  d.toric = std::move(clauses);
  return d;
}

}  // namespace

DeterminingSet encode_xor(const GameShape& shape, const std::vector<XorClause>& clauses) {
  if (shape.answers != 2) throw UsageError("encode_xor needs m == 2, got m = " + std::to_string(shape.answers));
  UniversalAlgebra U = universal_relations(shape, Dialect::Signature);
  const auto& f = *U.ring->field;
  std::vector<ToricClause> out;
  for (const auto& c : clauses) {
    if (static_cast<int>(c.questions.size()) != shape.players) throw UsageError("xor clause: one question per player");
    if (c.sign != 0 && c.sign != 1) throw UsageError("xor clause: sign must be 0 or 1");
    std::vector<Letter> w;
    for (int p = 0; p < shape.players; ++p)
      if (c.questions[static_cast<std::size_t>(p)] >= 0) w.push_back(U.generator(p, c.questions[static_cast<std::size_t>(p)]));
    out.push_back(ToricClause{Cyclo(f, Rational(c.sign ? -1 : 1)), Word(std::move(w))});
  }
  return toric_set(std::move(U), std::move(out));
}

DeterminingSet encode_modr(const GameShape& shape, const std::vector<ModrClause>& clauses, int r) {
  if (r < 2) throw UsageError("encode_modr needs r >= 2");
  if (shape.answers != r) throw UsageError("encode_modr needs m == r");
  UniversalAlgebra U = universal_relations(shape, Dialect::CyclicUnitary);
  const auto& f = *U.ring->field;
  std::vector<ToricClause> out;
  for (const auto& c : clauses) {
    if (static_cast<int>(c.questions.size()) != shape.players ||
        static_cast<int>(c.coefficients.size()) != shape.players)
      throw UsageError("mod-r clause: one question and one coefficient per player");
    if (c.rhs < 0 || c.rhs >= r) throw UsageError("mod-r clause: rhs outside [r]");
    std::vector<Letter> w;
    for (int p = 0; p < shape.players; ++p) {
      int q = c.questions[static_cast<std::size_t>(p)];
      int d = c.coefficients[static_cast<std::size_t>(p)];
      if (d < 0 || d >= r) throw UsageError("mod-r clause: coefficient outside [r]");
      if (q < 0) continue;
      if (q >= shape.questions) throw UsageError("mod-r clause: question index out of range");
      Letter g = U.generator(p, q);
      for (int e = 0; e < d; ++e) w.push_back(g);
    }
    out.push_back(ToricClause{root_of_unity_power(f, r, c.rhs), Word(std::move(w))});
  }
  return toric_set(std::move(U), std::move(out));
}

DeterminingSet encode_linsys(const LinearSystem& sys, const std::optional<std::vector<std::pair<int, int>>>& incidence) {
  const int r = sys.modulus;
  if (r < 2) throw UsageError("linear system modulus must be >= 2");
  if (sys.variables < 1 || sys.equations.empty()) throw UsageError("linear system needs variables and equations");
  const int E = static_cast<int>(sys.equations.size());
  std::vector<std::vector<std::pair<int, int>>> eqs;
  for (const auto& eq : sys.equations) {
    if (eq.rhs < 0 || eq.rhs >= r) throw UsageError("linear system: rhs outside [r]");
    std::map<int, int> merged;
    for (auto [t, d] : eq.terms) {
      if (t < 0 || t >= sys.variables) throw UsageError("linear system: variable index out of range");
      if (d < 0 || d >= r) throw UsageError("linear system: coefficient outside [r]");
      merged[t] = (merged[t] + d) % r;
    }
    std::vector<std::pair<int, int>> terms;
    for (auto [t, d] : merged) terms.emplace_back(t, d);
    eqs.push_back(std::move(terms));
  }
  if (incidence)
    for (auto [t, j] : *incidence) {
      if (j < 0 || j >= E) throw UsageError("incidence: equation index out of range");
      bool found = std::any_of(eqs[static_cast<std::size_t>(j)].begin(), eqs[static_cast<std::size_t>(j)].end(),
                               [&](auto& p) { return p.first == t; });
      if (!found)
        throw UsageError("incidence: variable " + std::to_string(t) + " does not occur in equation " + std::to_string(j));
    }

  Alphabet alpha;
  auto make_var = [&](std::string name, int player, int question) {
    Variable v;
    v.name = std::move(name);
    v.player = player;
    v.question = question;
    if (r != 2) {
      v.adjoint = AdjointRule::Unitary;
      v.unitary_order = r;
    }
    return alpha.add(std::move(v));
  };
  std::vector<std::vector<Letter>> alice(static_cast<std::size_t>(E));
  for (int j = 0; j < E; ++j)
    for (auto [t, d] : eqs[static_cast<std::size_t>(j)])
      alice[static_cast<std::size_t>(j)].push_back(make_var("a" + std::to_string(j) + "_" + std::to_string(t), 0, j));
  std::vector<Letter> bob;
  for (int t = 0; t < sys.variables; ++t) bob.push_back(make_var("b" + std::to_string(t), 1, t));

  UniversalAlgebra U;
  U.shape = GameShape{2, std::max(E, sys.variables), r};
  U.dialect = Dialect::CyclicUnitary;
  U.ring = make_ring(CycloField::make(std::lcm(r, 4)), std::move(alpha));
  const RingPtr& R = U.ring;
  auto one = NCPoly::constant(R, 1);
  for (std::size_t l = 0; l < R->alphabet.size(); ++l)
    U.relations.push_back(NCPoly::monomial(R, Word(std::vector<Letter>(static_cast<std::size_t>(r), static_cast<Letter>(l)))) - one);
  for (auto& c : cross_player_commutators(R)) U.relations.push_back(std::move(c));
  for (const auto& letters : alice)
    for (std::size_t u = 0; u < letters.size(); ++u)
      for (std::size_t v = u + 1; v < letters.size(); ++v) U.relations.push_back(commutator(R, letters[u], letters[v]));

  const auto& f = *R->field;
  std::vector<ToricClause> clauses;
  for (int j = 0; j < E; ++j) {
    std::vector<Letter> w;
    const auto& terms = eqs[static_cast<std::size_t>(j)];
    for (std::size_t s = 0; s < terms.size(); ++s)
      for (int e = 0; e < terms[s].second; ++e) w.push_back(alice[static_cast<std::size_t>(j)][s]);
    clauses.push_back(ToricClause{root_of_unity_power(f, r, sys.equations[static_cast<std::size_t>(j)].rhs), Word(std::move(w))});
  }
  for (int j = 0; j < E; ++j) {
    const auto& terms = eqs[static_cast<std::size_t>(j)];
    for (std::size_t s = 0; s < terms.size(); ++s) {
      Letter a = alice[static_cast<std::size_t>(j)][s];
      Letter b = bob[static_cast<std::size_t>(terms[s].first)];
      std::vector<Letter> w{a};
      for (int e = 0; e < r - 1; ++e) w.push_back(b);
      clauses.push_back(ToricClause{Cyclo::one(f), Word(std::move(w))});
    }
  }
  return toric_set(std::move(U), std::move(clauses));
}

// ------------------------------------------------------- synchronous games

SynchronousEncoding encode_synchronous(const GameTable& t) {
  validate(t);
  if (t.shape.players != 2) throw UsageError("synchronous games have two players");
  const int n = t.shape.questions, m = t.shape.answers;
  for (int i = 0; i < n; ++i) {
    auto it = std::find(t.questions.begin(), t.questions.end(), std::vector<int>{i, i});
    if (it == t.questions.end())
      throw UsageError("not synchronous: diagonal question (" + std::to_string(i) + ", " + std::to_string(i) + ") missing");
    const auto& good = t.valid[static_cast<std::size_t>(it - t.questions.begin())];
    std::set<std::vector<int>> g(good.begin(), good.end());
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b)
        if (g.count({a, b}) != (a == b ? 1u : 0u))
          throw UsageError("not synchronous: V(" + std::to_string(a) + ", " + std::to_string(b) + " | " +
                           std::to_string(i) + ", " + std::to_string(i) + ") = " + (a == b ? "0" : "1") +
                           " at (i, a, b) = (" + std::to_string(i) + ", " + std::to_string(a) + ", " +
                           std::to_string(b) + ")");
  }

  SynchronousEncoding out{DeterminingSet{universal_relations(t.shape, Dialect::Projector), {}, std::nullopt},
                          universal_relations(GameShape{1, n, m}, Dialect::Projector),
                          {}};
  const UniversalAlgebra& U = out.two_player.algebra;
  const UniversalAlgebra& U1 = out.one_player;
  for (std::size_t q = 0; q < t.questions.size(); ++q) {
    const auto& iv = t.questions[q];
    for (const auto& a : invalid_responses(t, q)) {
      if (iv[0] == iv[1] && a[0] != a[1]) continue;  // already zero by orthogonality
      for (int p = 0; p < 2; ++p)
        out.two_player.elements.push_back(
            NCPoly::monomial(U.ring, Word{U.generator(p, iv[0], a[0]), U.generator(p, iv[1], a[1])}));
      out.ideal.push_back(NCPoly::monomial(U1.ring, Word{U1.generator(0, iv[0], a[0]), U1.generator(0, iv[1], a[1])}));
    }
  }
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < m; ++a)
      out.two_player.elements.push_back(NCPoly::monomial(U.ring, Word{U.generator(0, i, a)}) -
                                        NCPoly::monomial(U.ring, Word{U.generator(1, i, a)}));
  return out;
}

std::vector<NCPoly> ColoringEncoding::generators() const {
  std::vector<NCPoly> g = algebra.relations;
  g.insert(g.end(), edge_relations.begin(), edge_relations.end());
  return g;
}

namespace {

void check_graph(int vertices, const std::vector<std::pair<int, int>>& edges, int colors) {
  if (vertices < 1) throw UsageError("graph needs at least one vertex");
  if (colors < 1) throw UsageError("need at least one color");
  std::set<std::pair<int, int>> seen;
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= vertices || v >= vertices) throw UsageError("edge endpoint out of range");
    if (u == v) throw UsageError("self-loop at vertex " + std::to_string(u));
    if (!seen.insert(std::minmax(u, v)).second)
      throw UsageError("repeated edge " + std::to_string(u) + " " + std::to_string(v));
  }
}

}  // namespace

ColoringEncoding encode_coloring(int vertices, const std::vector<std::pair<int, int>>& edges, int colors) {
  check_graph(vertices, edges, colors);
  ColoringEncoding c{universal_relations(GameShape{1, vertices, colors}, Dialect::Projector), {}};
  const auto& U = c.algebra;
  for (auto [u, v] : edges)
    for (int a = 0; a < colors; ++a) {
      c.edge_relations.push_back(NCPoly::monomial(U.ring, Word{U.generator(0, u, a), U.generator(0, v, a)}));
      c.edge_relations.push_back(NCPoly::monomial(U.ring, Word{U.generator(0, v, a), U.generator(0, u, a)}));
    }
  return c;
}

GameTable coloring_table(int vertices, const std::vector<std::pair<int, int>>& edges, int colors) {
  check_graph(vertices, edges, colors);
  GameTable t;
  t.shape = GameShape{2, vertices, colors};
  for (int v = 0; v < vertices; ++v) {
    t.questions.push_back({v, v});
    std::vector<std::vector<int>> good;
    for (int a = 0; a < colors; ++a) good.push_back({a, a});
    t.valid.push_back(std::move(good));
  }
  for (auto [u, v] : edges)
    for (auto [x, y] : {std::pair{u, v}, std::pair{v, u}}) {
      t.questions.push_back({x, y});
      std::vector<std::vector<int>> good;
      for (int a = 0; a < colors; ++a)
        for (int b = 0; b < colors; ++b)
          if (a != b) good.push_back({a, b});
      t.valid.push_back(std::move(good));
    }
  return t;
}

// ------------------------------------------------------ dialect conversion

NCPoly substitute(const NCPoly& p, const RingPtr& target, const std::vector<NCPoly>& images) {
  if (images.size() != p.ring()->alphabet.size()) throw UsageError("substitute: one image per letter required");
  NCPoly out(target);
  for (const auto& t : p.terms()) {
    NCPoly acc = NCPoly::constant(target, t.coeff);
    for (Letter l : t.word) acc = acc * images[l];
    out += acc;
  }
  return out;
}

NCPoly projector_to_signature(const NCPoly& p, const UniversalAlgebra& S) {
  if (S.dialect != Dialect::Signature) throw UsageError("target algebra must use the signature dialect");
  const RingPtr& R = S.ring;
  const Cyclo half(*R->field, Rational(1, 2));
  std::vector<NCPoly> images;
  for (const auto& v : p.ring()->alphabet.variables()) {
    if (v.answer < 0) throw UsageError("source polynomial is not in the projector dialect");
    NCPoly x = NCPoly::monomial(R, Word{S.generator(v.player, v.question, v.answer)});
    if (S.shape.answers == 2 && v.answer == 1) x = -x;
    images.push_back((NCPoly::constant(R, 1) + x) * half);
  }
  return substitute(p, R, images);
}

NCPoly signature_to_projector(const NCPoly& p, const UniversalAlgebra& P) {
  if (P.dialect != Dialect::Projector) throw UsageError("target algebra must use the projector dialect");
  const RingPtr& R = P.ring;
  const Cyclo two(*R->field, Rational(2));
  std::vector<NCPoly> images;
  for (const auto& v : p.ring()->alphabet.variables()) {
    int a = v.answer < 0 ? 0 : v.answer;
    images.push_back(NCPoly::monomial(R, Word{P.generator(v.player, v.question, a)}) * two - NCPoly::constant(R, 1));
  }
  return substitute(p, R, images);
}

}  // namespace ncgame
