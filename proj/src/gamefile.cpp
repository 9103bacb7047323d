#include "ncgame/gamefile.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "ncgame/errors.hpp"

namespace ncgame {

namespace {

std::vector<std::string> split(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream is{std::string(line)};
  for (std::string t; is >> t;) out.push_back(t);
  return out;
}

int to_int(std::string_view s, std::size_t line) {
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) throw ParseError(line, "expected an integer, got '" + std::string(s) + "'");
  return v;
}

// "p:q" or "p:q^d"
struct Factor {
  int player, question, power;
};

Factor parse_factor(const std::string& tok, std::size_t line) {
  auto colon = tok.find(':');
  if (colon == std::string::npos) throw ParseError(line, "expected player:question, got '" + tok + "'");
  auto caret = tok.find('^', colon);
  Factor f{to_int(std::string_view(tok).substr(0, colon), line), 0, 1};
  if (caret == std::string::npos) {
    f.question = to_int(std::string_view(tok).substr(colon + 1), line);
  } else {
    f.question = to_int(std::string_view(tok).substr(colon + 1, caret - colon - 1), line);
    f.power = to_int(std::string_view(tok).substr(caret + 1), line);
  }
  return f;
}

// "t" or "t^d"
std::pair<int, int> parse_term(const std::string& tok, std::size_t line) {
  auto caret = tok.find('^');
  if (caret == std::string::npos) return {to_int(tok, line), 1};
  return {to_int(std::string_view(tok).substr(0, caret), line), to_int(std::string_view(tok).substr(caret + 1), line)};
}

}  // namespace

GameFile parse_game(std::string_view text) {
  GameFile g;
  bool have_kind = false;
  int declared_vars = -1;
  int declared_vertices = -1;
  std::size_t kind_line = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t lineno = 0;

  auto need_kind = [&](GameKind k, const char* what) {
    if (!have_kind || g.kind != k) throw ParseError(lineno, std::string("'") + what + "' outside its section");
  };
  auto need_shape = [&]() -> const GameShape& {
    if (!g.shape) throw ParseError(lineno, "'shape k n m' must come before clauses");
    return *g.shape;
  };
  auto set_kind = [&](GameKind k) {
    if (have_kind) throw ParseError(lineno, "more than one game section");
    have_kind = true;
    g.kind = k;
    kind_line = lineno;
  };

  while (std::getline(in, raw)) {
    ++lineno;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    auto tok = split(raw);
    if (tok.empty()) continue;
    const std::string& key = tok[0];
    try {
      if (key == "shape") {
        if (tok.size() != 4) throw ParseError(lineno, "usage: shape k n m");
        GameShape s{to_int(tok[1], lineno), to_int(tok[2], lineno), to_int(tok[3], lineno)};
        if (s.players < 1 || s.questions < 1 || s.answers < 1) throw ParseError(lineno, "k, n, m must be >= 1");
        g.shape = s;
      } else if (key == "xor") {
        if (tok.size() != 1) throw ParseError(lineno, "usage: xor");
        set_kind(GameKind::Xor);
      } else if (key == "modr" || key == "linsys" || key == "graph") {
        if (tok.size() != 2) throw ParseError(lineno, "usage: " + key + " r");
        set_kind(key == "modr" ? GameKind::Modr : key == "linsys" ? GameKind::Linsys : GameKind::Graph);
        int r = to_int(tok[1], lineno);
        if (r < (key == "graph" ? 1 : 2)) throw ParseError(lineno, key + " parameter out of range");
        if (key == "graph") {
          g.colors = r;
        } else {
          g.modulus = r;
          g.linsys.modulus = r;
        }
      } else if (key == "table") {
        if (tok.size() != 1) throw ParseError(lineno, "usage: table");
        set_kind(GameKind::Table);
        g.table.shape = need_shape();
      } else if (key == "clause") {
        if (!have_kind || (g.kind != GameKind::Xor && g.kind != GameKind::Modr))
          throw ParseError(lineno, "'clause' outside an xor or modr section");
        const GameShape& s = need_shape();
        if (tok.size() < 3 || tok[tok.size() - 2] != "=") throw ParseError(lineno, "usage: clause p:q ... = s");
        std::vector<int> q(static_cast<std::size_t>(s.players), -1), d(static_cast<std::size_t>(s.players), 0);
        for (std::size_t i = 1; i + 2 < tok.size(); ++i) {
          Factor f = parse_factor(tok[i], lineno);
          if (f.player < 0 || f.player >= s.players) throw ParseError(lineno, "player index out of range");
          if (f.question < 0 || f.question >= s.questions) throw ParseError(lineno, "question index out of range");
          if (q[static_cast<std::size_t>(f.player)] >= 0) throw ParseError(lineno, "player listed twice in one clause");
          q[static_cast<std::size_t>(f.player)] = f.question;
          d[static_cast<std::size_t>(f.player)] = f.power;
        }
        int rhs = to_int(tok.back(), lineno);
        if (g.kind == GameKind::Xor) {
          for (int x : d)
            if (x > 1) throw ParseError(lineno, "xor clauses take no powers");
          if (rhs != 0 && rhs != 1) throw ParseError(lineno, "xor clause sign must be 0 or 1");
          g.xor_clauses.push_back(XorClause{q, rhs});
        } else {
          for (int x : d)
            if (x < 0 || x >= g.modulus) throw ParseError(lineno, "coefficient outside [r]");
          if (rhs < 0 || rhs >= g.modulus) throw ParseError(lineno, "rhs outside [r]");
          g.modr_clauses.push_back(ModrClause{q, d, rhs});
        }
      } else if (key == "variables") {
        need_kind(GameKind::Linsys, "variables");
        if (tok.size() != 2) throw ParseError(lineno, "usage: variables N");
        declared_vars = to_int(tok[1], lineno);
        if (declared_vars < 1) throw ParseError(lineno, "need at least one variable");
      } else if (key == "eq") {
        need_kind(GameKind::Linsys, "eq");
        if (tok.size() < 4 || tok[tok.size() - 2] != "=") throw ParseError(lineno, "usage: eq t t^d ... = s");
        LinearEquation e;
        for (std::size_t i = 1; i + 2 < tok.size(); ++i) {
          auto [t, dcoef] = parse_term(tok[i], lineno);
          if (t < 0) throw ParseError(lineno, "variable index must be >= 0");
          if (dcoef < 0 || dcoef >= g.modulus) throw ParseError(lineno, "coefficient outside [r]");
          e.terms.emplace_back(t, dcoef);
        }
        e.rhs = to_int(tok.back(), lineno);
        if (e.rhs < 0 || e.rhs >= g.modulus) throw ParseError(lineno, "rhs outside [r]");
        g.linsys.equations.push_back(std::move(e));
      } else if (key == "Q") {
        need_kind(GameKind::Table, "Q");
        const GameShape& s = g.table.shape;
        auto colon = std::find(tok.begin(), tok.end(), ":");
        if (colon == tok.end()) throw ParseError(lineno, "usage: Q i1 .. ik : a1 .. ak, ...");
        std::vector<int> qv;
        for (auto it = tok.begin() + 1; it != colon; ++it) {
          int i = to_int(*it, lineno);
          if (i < 0 || i >= s.questions) throw ParseError(lineno, "question index out of range");
          qv.push_back(i);
        }
        if (static_cast<int>(qv.size()) != s.players) throw ParseError(lineno, "question vector needs k entries");
        for (const auto& seen : g.table.questions)
          if (seen == qv) throw ParseError(lineno, "question listed twice");
        std::string rest;
        for (auto it = colon + 1; it != tok.end(); ++it) rest += *it + " ";
        std::vector<std::vector<int>> valid;
        std::istringstream tuples(rest);
        for (std::string chunk; std::getline(tuples, chunk, ',');) {
          auto parts = split(chunk);
          if (parts.empty()) {
            if (!valid.empty() || tuples.peek() != EOF) throw ParseError(lineno, "empty answer tuple");
            continue;
          }
          if (static_cast<int>(parts.size()) != s.players) throw ParseError(lineno, "answer tuple needs k entries");
          std::vector<int> a;
          for (const auto& p : parts) {
            int x = to_int(p, lineno);
            if (x < 0 || x >= s.answers) throw ParseError(lineno, "answer index out of range");
            a.push_back(x);
          }
          valid.push_back(std::move(a));
        }
        g.table.questions.push_back(std::move(qv));
        g.table.valid.push_back(std::move(valid));
      } else if (key == "detset") {
        need_kind(GameKind::Table, "detset");
        if (tok.size() != 2 || (tok[1] != "valid" && tok[1] != "invalid"))
          throw ParseError(lineno, "usage: detset valid|invalid");
        g.detset = tok[1] == "valid" ? ResponseSet::Valid : ResponseSet::Invalid;
      } else if (key == "vertices") {
        need_kind(GameKind::Graph, "vertices");
        if (tok.size() != 2) throw ParseError(lineno, "usage: vertices N");
        declared_vertices = to_int(tok[1], lineno);
        if (declared_vertices < 1) throw ParseError(lineno, "need at least one vertex");
      } else if (key == "edge") {
        need_kind(GameKind::Graph, "edge");
        if (tok.size() != 3) throw ParseError(lineno, "usage: edge u v");
        int u = to_int(tok[1], lineno), v = to_int(tok[2], lineno);
        if (u < 0 || v < 0) throw ParseError(lineno, "vertex index must be >= 0");
        if (u == v) throw ParseError(lineno, "self-loop at vertex " + std::to_string(u));
        for (auto [a, b] : g.edges)
          if (std::minmax(a, b) == std::minmax(u, v)) throw ParseError(lineno, "edge listed twice");
        g.edges.emplace_back(u, v);
      } else {
        throw ParseError(lineno, "unknown keyword '" + key + "'");
      }
    } catch (const UsageError& e) {
      throw ParseError(lineno, e.what());
    }
  }
  lineno = 0;
  if (!have_kind) throw ParseError(0, "no game section (xor, modr, linsys, table or graph)");
  switch (g.kind) {
    case GameKind::Xor:
    case GameKind::Modr:
      if (!g.shape) throw ParseError(kind_line, "missing 'shape k n m'");
      if (g.kind == GameKind::Xor && g.shape->answers != 2) throw ParseError(kind_line, "xor games need m = 2");
      if (g.kind == GameKind::Modr && g.shape->answers != g.modulus) throw ParseError(kind_line, "modr games need m = r");
      break;
    case GameKind::Linsys: {
      int top = 0;
      for (const auto& e : g.linsys.equations)
        for (auto [t, d] : e.terms) top = std::max(top, t + 1);
      if (declared_vars >= 0 && top > declared_vars) throw ParseError(0, "equation uses a variable beyond 'variables'");
      g.linsys.variables = declared_vars >= 0 ? declared_vars : top;
      if (g.linsys.equations.empty()) throw ParseError(kind_line, "linsys section without equations");
      break;
    }
    case GameKind::Table:
      break;
    case GameKind::Graph: {
      int top = 0;
      for (auto [u, v] : g.edges) top = std::max({top, u + 1, v + 1});
      if (declared_vertices >= 0 && top > declared_vertices) throw ParseError(0, "edge uses a vertex beyond 'vertices'");
      g.vertices = declared_vertices >= 0 ? declared_vertices : std::max(top, 1);
      break;
    }
  }
  return g;
}

GameFile read_game_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_game(ss.str());
}

DeterminingSet determining_set(const GameFile& g, std::optional<Dialect> dialect) {
  switch (g.kind) {
    case GameKind::Xor: {
      Dialect d = dialect.value_or(Dialect::Signature);
      if (d == Dialect::CyclicUnitary) {
        std::vector<ModrClause> cl;
        for (const auto& c : g.xor_clauses) {
          std::vector<int> coeff;
          for (int q : c.questions) coeff.push_back(q >= 0 ? 1 : 0);
          cl.push_back(ModrClause{c.questions, coeff, c.sign});
        }
        return encode_modr(*g.shape, cl, 2);
      }
      DeterminingSet s = encode_xor(*g.shape, g.xor_clauses);
      if (d == Dialect::Signature) return s;
      DeterminingSet p{universal_relations(*g.shape, Dialect::Projector), {}, std::nullopt};
      for (const auto& e : s.elements) p.elements.push_back(signature_to_projector(e, p.algebra));
      return p;
    }
    case GameKind::Modr:
      if (dialect && *dialect != Dialect::CyclicUnitary) throw UsageError("modr games use the cyclic dialect");
      return encode_modr(*g.shape, g.modr_clauses, g.modulus);
    case GameKind::Linsys:
      if (dialect && *dialect != Dialect::CyclicUnitary) throw UsageError("linear-systems games use the cyclic dialect");
      return encode_linsys(g.linsys);
    case GameKind::Table:
      if (dialect && *dialect != Dialect::Projector) throw UsageError("table games use the projector dialect");
      return detset_from_table(g.table, g.detset);
    case GameKind::Graph:
      throw UsageError("graph files describe coloring problems; use the color subcommand");
  }
  throw UsageError("unknown game kind");
}

}  // namespace ncgame
