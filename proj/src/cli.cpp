#include "ncgame/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <functional>
#include <fstream>
#include <iomanip>
#include <ostream>

#include "ncgame/artifacts.hpp"
#include "ncgame/decide.hpp"
#include "ncgame/errors.hpp"
#include "ncgame/gamefile.hpp"

namespace ncgame::cli {

namespace fs = std::filesystem;

namespace {

struct Flags {
  std::string input;
  std::string game;
  std::size_t cap = 0;  // 0: module default
  std::string dialect;
  std::size_t sos_degree = 2;
  std::size_t max_dim = 4096;
  double tol = 1e-9;
  std::string out;
  int colors = 0;
  bool quiet = false;
};

std::string prefix_for(const Flags& f) {
  if (!f.out.empty()) return f.out;
  return fs::path(f.input).stem().string();
}

void write_file(const std::string& path, const std::function<void(std::ostream&)>& body) {
  std::ofstream os(path);
  if (!os) throw UsageError("cannot write " + path);
  body(os);
  if (!os) throw UsageError("error writing " + path);
}

std::optional<Dialect> dialect_of(const Flags& f) {
  if (f.dialect.empty()) return std::nullopt;
  return parse_dialect(f.dialect);
}

GameFile load(const std::string& path) {
  try {
    return read_game_file(path);
  } catch (const ParseError& e) {
    throw ParseError(0, path + ": " + e.what());
  }
}

void print_matrix(std::ostream& out, const CycloMatrix& m) {
  std::vector<std::vector<std::string>> cells(m.dimension(), std::vector<std::string>(m.dimension()));
  std::size_t width = 1;
  for (std::size_t r = 0; r < m.dimension(); ++r)
    for (std::size_t c = 0; c < m.dimension(); ++c) {
      cells[r][c] = m.entry(r, c).to_string();
      width = std::max(width, cells[r][c].size());
    }
  for (const auto& row : cells) {
    out << "  [";
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? " " : "") << std::setw(static_cast<int>(width)) << row[c];
    out << " ]\n";
  }
}

void print_verdict(std::ostream& out, const Flags& f, const Verdict& v) {
  out << "input: " << f.input << '\n';
  out << "outcome: " << to_string(v.outcome) << '\n';
  out << "reason: " << v.reason << '\n';
  out << "cap: " << v.cap << '\n';
  if (v.system)
    out << "rules: " << v.system->rules().size() << " (" << (v.system->is_complete() ? "complete" : "truncated")
        << ")\n";
  for (const auto& n : v.notes) out << "note: " << n << '\n';
}

StrategyFile witness_file(const Verdict& v, const DeterminingSet& d) {
  return StrategyFile{*v.witness, d.algebra.relations, d.elements};
}

// Writes the artifact backing `v`; returns its path or "".
std::string write_artifacts(const Flags& f, const Verdict& v, const DeterminingSet& d, const DecideOptions& opts) {
  const std::string base = prefix_for(f);
  if (v.outcome == Outcome::Perfect && v.witness) {
    std::string path = base + ".strategy";
    write_file(path, [&](std::ostream& os) { write_strategy(os, witness_file(v, d)); });
    return path;
  }
  if (v.outcome != Outcome::NoPerfect) return "";
  if (v.norm) {
    std::string path = base + ".norm";
    NormFile n{d.algebra.ring, (*d.toric)[v.norm->clause], d.algebra.relations};
    write_file(path, [&](std::ostream& os) { write_norm(os, n); });
    return path;
  }
  if (v.phase) {
    std::string path = base + ".phase";
    CompletionOptions copts;
    copts.cap = opts.cap;
    auto uni = std::make_shared<const RewriteSystem>(complete(d.algebra.relations, copts));
    PhaseFile p{uni, *d.toric, *v.phase};
    write_file(path, [&](std::ostream& os) { write_phase(os, p); });
    return path;
  }
  std::string path = base + ".basis";
  const RingPtr& ring = v.system->ring();
  NCPoly xi = NCPoly::monomial(ring, Word{*ring->alphabet.auxiliary()}, Cyclo::one(*ring->field));
  write_file(path, [&](std::ostream& os) { write_basis(os, *v.system, xi); });
  return path;
}

DecideOptions decide_options(const Flags& f) {
  DecideOptions o;
  if (f.cap) o.cap = f.cap;
  o.max_dim = f.max_dim;
  return o;
}

int cmd_gb(const Flags& f, std::ostream& out) {
  GameFile g = load(f.input);
  DeterminingSet d = determining_set(g, dialect_of(f));
  CompletionOptions copts;
  copts.cap = f.cap ? f.cap : DecideOptions{}.cap;
  auto mm = member_mixed(NCPoly::constant(d.algebra.ring, 1), AugmentedInput{d.algebra.ring, d.algebra.relations,
                                                                           d.elements},
                         copts);
  std::optional<NCPoly> target;
  if (mm.verdict == Membership::Yes) {
    const RingPtr& ring = mm.system.ring();
    target = NCPoly::monomial(ring, Word{*ring->alphabet.auxiliary()}, Cyclo::one(*ring->field));
  }
  if (f.out.empty()) {
    write_basis(out, mm.system, target);
  } else {
    write_file(f.out, [&](std::ostream& os) { write_basis(os, mm.system, target); });
    out << "rules: " << mm.system.rules().size() << " (" << (mm.system.is_complete() ? "complete" : "truncated")
        << ")\n";
    out << "xi: " << to_string(mm.verdict) << '\n';
    out << "basis: " << f.out << '\n';
  }
  return 0;
}

int cmd_decide(const Flags& f, std::ostream& out, bool want_strategy) {
  GameFile g = load(f.input);
  DeterminingSet d = determining_set(g, dialect_of(f));
  DecideOptions opts = decide_options(f);
  Verdict v = decide(d, opts);
  print_verdict(out, f, v);
  if (want_strategy && v.outcome == Outcome::Perfect && !v.witness) {
    out << "strategy: none (no finite witness was found)\n";
    return exit_code(Outcome::Unknown);
  }
  std::string path = write_artifacts(f, v, d, opts);
  if (v.witness) {
    const Strategy& s = *v.witness;
    out << "dimension: " << s.dimension() << '\n';
    if (!s.basis.empty()) {
      out << "basis:";
      for (const auto& w : s.basis) out << "  " << word_to_string(s.ring->alphabet, w);
      out << '\n';
    }
    if (want_strategy && !f.quiet && s.dimension() <= 16) {
      for (std::size_t l = 0; l < s.ring->alphabet.size(); ++l) {
        const auto& var = s.ring->alphabet[static_cast<Letter>(l)];
        if (var.auxiliary) continue;
        out << var.name << " =\n";
        print_matrix(out, s.matrices[l]);
      }
    }
    out << "witness: " << path << '\n';
  } else if (!path.empty()) {
    out << "certificate: " << path << '\n';
  }
  return exit_code(v.outcome);
}

std::optional<std::vector<int>> classical_coloring(int vertices, const std::vector<std::pair<int, int>>& edges,
                                                   int colors) {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(vertices));
  for (auto [u, v] : edges) {
    adj[static_cast<std::size_t>(u)].push_back(v);
    adj[static_cast<std::size_t>(v)].push_back(u);
  }
  std::vector<int> col(static_cast<std::size_t>(vertices), -1);
  std::function<bool(int)> go = [&](int v) {
    if (v == vertices) return true;
    for (int c = 0; c < colors; ++c) {
      bool ok = true;
      for (int u : adj[static_cast<std::size_t>(v)]) ok = ok && col[static_cast<std::size_t>(u)] != c;
      if (!ok) continue;
      col[static_cast<std::size_t>(v)] = c;
      if (go(v + 1)) return true;
    }
    col[static_cast<std::size_t>(v)] = -1;
    return false;
  };
  if (go(0)) return col;
  return std::nullopt;
}

int colors_for(const Flags& f, const GameFile& g) {
  int c = f.colors ? f.colors : g.colors;
  if (c < 1) throw UsageError("number of colors must be >= 1");
  return c;
}

int cmd_color(const Flags& f, std::ostream& out) {
  GameFile g = load(f.input);
  if (g.kind != GameKind::Graph) throw UsageError(f.input + " is not a graph file");
  const int c = colors_for(f, g);
  out << "input: " << f.input << '\n';
  out << "graph: " << g.vertices << " vertices, " << g.edges.size() << " edges, " << c << " colors\n";
  if (auto col = classical_coloring(g.vertices, g.edges, c)) {
    out << "outcome: Perfect\n";
    out << "reason: classical " << c << "-coloring";
    for (int x : *col) out << ' ' << x;
    out << '\n';
    return exit_code(Outcome::Perfect);
  }
  out << "note: no classical " << c << "-coloring\n";
  ColoringEncoding enc = encode_coloring(g.vertices, g.edges, c);
  SosOptions opts;
  opts.degree = f.sos_degree;
  if (f.cap) opts.cap = f.cap;
  opts.sdp.tol = f.tol;
  SosAttempt a = decide_synchronous_nocolor(enc.generators(), opts);
  for (const auto& l : a.log) out << "log: " << l << '\n';
  if (a.outcome == Outcome::NoPerfect && a.certificate) {
    std::string path = prefix_for(f) + ".sos";
    write_file(path, [&](std::ostream& os) { write_sos(os, *a.certificate); });
    out << "outcome: NoPerfect\n";
    out << "reason: no quantum " << c << "-coloring\n";
    out << "certificate: " << path << '\n';
    return exit_code(Outcome::NoPerfect);
  }
  out << "outcome: Unknown\n";
  out << "reason: no certificate at degree " << f.sos_degree << '\n';
  return exit_code(Outcome::Unknown);
}

int cmd_verify(const Flags& f, std::ostream& out) {
  std::ifstream in(f.input);
  if (!in) throw UsageError("cannot open " + f.input);
  std::optional<ArtifactContext> ctx;
  if (!f.game.empty()) {
    GameFile g = load(f.game);
    if (g.kind == GameKind::Graph) {
      ColoringEncoding enc = encode_coloring(g.vertices, g.edges, colors_for(f, g));
      ctx = ArtifactContext{enc.algebra.ring, enc.generators(), {}, std::nullopt, false};
    } else {
      DeterminingSet d = determining_set(g, dialect_of(f));
      ctx = ArtifactContext{d.algebra.ring, d.algebra.relations, d.elements, d.toric, true};
    }
  }
  VerifyResult r;
  try {
    r = verify_artifact(in, ctx ? &*ctx : nullptr);
  } catch (const ParseError& e) {
    throw ParseError(0, f.input + ": " + e.what());
  }
  out << "artifact: " << to_string(r.kind) << '\n';
  for (const auto& m : r.messages) out << (r.ok ? "ok: " : "check: ") << m << '\n';
  if (!r.ok) {
    out << "result: FAILED\n";
    return kExitVerifyFailed;
  }
  out << "result: verified\n";
  if (r.kind == ArtifactKind::Basis && r.attested == Outcome::Unknown) return 0;
  out << "attests: " << to_string(r.attested) << '\n';
  return exit_code(r.attested);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Perfect commuting-operator strategies for nonlocal games", args.empty() ? "ncgame" : args[0]};
  app.require_subcommand(1);
  Flags f;

  auto add_common = [&](CLI::App* s) {
    s->add_option("input", f.input, "game, graph or artifact file")->required();
    s->add_option("--out", f.out, "output path prefix (basis: output file)");
  };
  auto add_game = [&](CLI::App* s) {
    s->add_option("--cap", f.cap, "degree cap for completion")->check(CLI::Range(1, 64));
    s->add_option("--dialect", f.dialect, "projector, signature or cyclic")
        ->check(CLI::IsMember({"projector", "signature", "cyclic"}));
  };

  auto* gb = app.add_subcommand("gb", "Groebner basis of the universal ideal plus the determining left ideal");
  add_common(gb);
  add_game(gb);
  auto* dec = app.add_subcommand("decide", "decide whether a perfect strategy exists");
  add_common(dec);
  add_game(dec);
  dec->add_option("--max-dim", f.max_dim, "largest quotient dimension to build")->check(CLI::Range(1, 1 << 20));
  auto* strat = app.add_subcommand("strategy", "decide and print the finite witness");
  add_common(strat);
  add_game(strat);
  strat->add_option("--max-dim", f.max_dim, "largest quotient dimension to build")->check(CLI::Range(1, 1 << 20));
  strat->add_flag("--quiet", f.quiet, "do not print matrices");
  auto* col = app.add_subcommand("color", "quantum coloring via sum-of-squares certificates");
  add_common(col);
  col->add_option("--colors", f.colors, "number of colors (default: graph header)")->check(CLI::Range(1, 64));
  col->add_option("--sos-degree", f.sos_degree, "degree d of the word set W_d")->check(CLI::Range(1, 4));
  col->add_option("--cap", f.cap, "degree cap for completion")->check(CLI::Range(1, 64));
  col->add_option("--tol", f.tol, "solver tolerance")->check(CLI::Range(1e-15, 1e-2));
  auto* ver = app.add_subcommand("verify", "re-check a basis, strategy, sos, norm or phase file");
  ver->add_option("input", f.input, "artifact file")->required();
  ver->add_option("--game", f.game, "game or graph file the artifact must belong to");
  ver->add_option("--dialect", f.dialect, "dialect of --game")->check(CLI::IsMember({"projector", "signature", "cyclic"}));
  ver->add_option("--colors", f.colors, "colors for a graph --game")->check(CLI::Range(1, 64));

  try {
    std::vector<std::string> rev(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
    std::reverse(rev.begin(), rev.end());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*gb) return cmd_gb(f, out);
    if (*dec) return cmd_decide(f, out, false);
    if (*strat) return cmd_decide(f, out, true);
    if (*col) return cmd_color(f, out);
    if (*ver) return cmd_verify(f, out);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitUsage;
}

}  // namespace ncgame::cli
