#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ncgame/artifacts.hpp"
#include "ncgame/cli.hpp"
#include "ncgame/errors.hpp"
#include "ncgame/gamefile.hpp"

using namespace ncgame;
namespace fs = std::filesystem;

namespace {

const fs::path games = NCGAME_GAMES_DIR;

struct Run {
  int code;
  std::string out, err;
};

Run run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "ncgame");
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch() {
  fs::path p = fs::temp_directory_path() / "ncgame_unit";
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const fs::path& p, const std::string& s) { std::ofstream(p) << s; }

VerifyResult verify_text(const std::string& s, const ArtifactContext* ctx = nullptr) {
  std::istringstream in(s);
  return verify_artifact(in, ctx);
}

DeterminingSet chsh() { return determining_set(read_game_file(games / "chsh.game")); }

}  // namespace

TEST_CASE("basis file round trip") {
  auto d = chsh();
  auto m = member_mixed(NCPoly::constant(d.algebra.ring, 1), {d.algebra.ring, d.algebra.relations, d.elements}, 6);
  const RingPtr& ring = m.system.ring();
  NCPoly xi = NCPoly::monomial(ring, Word{*ring->alphabet.auxiliary()}, Cyclo::one(*ring->field));
  std::ostringstream os;
  write_basis(os, m.system, xi);
  std::istringstream is(os.str());
  auto b = read_basis(is);
  REQUIRE(b.system->rules().size() == m.system.rules().size());
  for (std::size_t i = 0; i < b.system->rules().size(); ++i)
    CHECK(b.system->rules()[i].to_string() == m.system.rules()[i].to_string());
  CHECK(b.target->to_string() == "xi");
  std::ostringstream again;
  write_basis(again, *b.system, b.target);
  CHECK(again.str() == os.str());

  ArtifactContext ctx{d.algebra.ring, d.algebra.relations, d.elements, d.toric, true};
  auto v = verify_text(os.str(), &ctx);
  CHECK(v.ok);
  CHECK(v.attested == Outcome::NoPerfect);

  // drop the last generator's sign: the derivation no longer checks
  std::string t = os.str();
  auto pos = t.find("gen -x1 y1 xi - xi");
  REQUIRE(pos != std::string::npos);
  t.replace(pos, 18, "gen x1 y1 xi - xi");
  CHECK(!verify_text(t).ok);
}

TEST_CASE("strategy, norm and phase files round trip") {
  auto ghz = determining_set(read_game_file(games / "ghz.game"));
  auto v = decide(ghz);
  REQUIRE(v.witness);
  std::ostringstream os;
  write_strategy(os, {*v.witness, ghz.algebra.relations, ghz.elements});
  auto ok = verify_text(os.str());
  CHECK(ok.ok);
  CHECK(ok.attested == Outcome::Perfect);
  std::string t = os.str();
  auto pos = t.find("at 1 0 : 1");
  REQUIRE(pos != std::string::npos);
  t.replace(pos, 10, "at 1 0 : 2");
  CHECK(!verify_text(t).ok);

  auto d = chsh();
  NormFile n{d.algebra.ring, {Cyclo(*d.algebra.ring->field, Rational(2)), (*d.toric)[0].word}, d.algebra.relations};
  std::ostringstream ns;
  write_norm(ns, n);
  CHECK(verify_text(ns.str()).ok);
  NormFile unit{d.algebra.ring, (*d.toric)[0], d.algebra.relations};
  std::ostringstream us;
  write_norm(us, unit);
  CHECK(!verify_text(us.str()).ok);
  NormFile loose{d.algebra.ring, n.clause, {}};
  std::ostringstream ls;
  write_norm(ls, loose);
  CHECK(!verify_text(ls.str()).ok);

  auto U = std::make_shared<const RewriteSystem>(complete(d.algebra.relations, 6));
  auto ob = subgroup_check({*d.toric, U.get()}, 8);
  REQUIRE(ob);
  std::ostringstream ps;
  write_phase(ps, {U, *d.toric, *ob});
  ArtifactContext ctx{d.algebra.ring, d.algebra.relations, d.elements, d.toric, true};
  auto pv = verify_text(ps.str(), &ctx);
  CHECK(pv.ok);
  CHECK(pv.attested == Outcome::NoPerfect);
  auto wrong = *ob;
  wrong.phase = Cyclo::one(*d.algebra.ring->field);
  std::ostringstream ws;
  write_phase(ws, {U, *d.toric, wrong});
  CHECK(!verify_text(ws.str()).ok);
}

TEST_CASE("malformed artifacts are parse errors with line numbers") {
  CHECK_THROWS_AS(verify_text("hello\n"), ParseError);
  try {
    verify_text("ncgame-basis 1\nfield 4\nletter x self 0 0 -\norder x\ncap six\n");
    FAIL("no exception");
  } catch (const ParseError& e) {
    CHECK(e.line() == 5);
  }
}

TEST_CASE("cli: decide and verify every game in the corpus") {
  const fs::path dir = scratch();
  struct Case {
    const char* game;
    int code;
    const char* ext;
  };
  for (auto [game, code, ext] : {Case{"chsh.game", 1, ".basis"}, Case{"ghz.game", 0, ".strategy"},
                                 Case{"ghz_mermin.game", 0, ".strategy"}, Case{"magic_square.game", 0, ".strategy"},
                                 Case{"contradiction.game", 1, ".basis"}, Case{"mod3.game", 0, ".strategy"}}) {
    CAPTURE(game);
    std::string prefix = (dir / fs::path(game).stem()).string();
    auto r = run_cli({"decide", (games / game).string(), "--out", prefix});
    CHECK(r.code == code);
    auto v = run_cli({"verify", prefix + ext, "--game", (games / game).string()});
    CHECK(v.code == code);
    CHECK(v.out.find("result: verified") != std::string::npos);
  }
}

TEST_CASE("cli: determinism") {
  const fs::path dir = scratch();
  for (const char* game : {"chsh.game", "ghz.game"}) {
    auto a = run_cli({"decide", (games / game).string(), "--out", (dir / "a").string()});
    auto b = run_cli({"decide", (games / game).string(), "--out", (dir / "b").string()});
    const char* ext = a.code == 0 ? ".strategy" : ".basis";
    CHECK(slurp(dir / (std::string("a") + ext)) == slurp(dir / (std::string("b") + ext)));
  }
}

TEST_CASE("cli: exit codes") {
  const fs::path dir = scratch();
  CHECK(run_cli({}).code == cli::kExitUsage);
  CHECK(run_cli({"decide"}).code == cli::kExitUsage);
  CHECK(run_cli({"decide", (games / "chsh.game").string(), "--cap", "0"}).code == cli::kExitUsage);
  CHECK(run_cli({"decide", (dir / "missing.game").string()}).code == cli::kExitUsage);
  spit(dir / "bad.game", "shape 2 2 2\nxor\nclause 0:0 1:7 = 0\n");
  auto bad = run_cli({"decide", (dir / "bad.game").string()});
  CHECK(bad.code == cli::kExitUsage);
  CHECK(bad.err.find("line 3") != std::string::npos);
  CHECK(run_cli({"color", (games / "chsh.game").string()}).code == cli::kExitUsage);

  auto col = run_cli({"color", (games / "edgeless.graph").string()});
  CHECK(col.code == 0);
  auto tri = run_cli({"color", (games / "triangle.graph").string(), "--out", (dir / "tri").string()});
  CHECK(tri.code == 1);
  CHECK(tri.out.find("no quantum 2-coloring") != std::string::npos);
  CHECK(run_cli({"verify", (dir / "tri.sos").string(), "--game", (games / "triangle.graph").string()}).code == 1);
  // the triangle certificate is not a certificate for the bipyramid
  CHECK(run_cli({"verify", (dir / "tri.sos").string(), "--game", (games / "bipyramid.graph").string()}).code ==
        cli::kExitVerifyFailed);

  auto gb = run_cli({"gb", (games / "ghz.game").string(), "--out", (dir / "ghz.basis").string()});
  CHECK(gb.code == 0);
  CHECK(run_cli({"verify", (dir / "ghz.basis").string()}).code == 0);

  auto s = run_cli({"strategy", (games / "chsh.game").string(), "--out", (dir / "chsh_s").string()});
  CHECK(s.code == 1);
  auto st = run_cli({"strategy", (games / "ghz.game").string(), "--out", (dir / "ghz_s").string()});
  CHECK(st.code == 0);
  CHECK(st.out.find("x0 =") != std::string::npos);
  // a CHSH basis is not valid for GHZ
  run_cli({"decide", (games / "chsh.game").string(), "--out", (dir / "c").string()});
  CHECK(run_cli({"verify", (dir / "c.basis").string(), "--game", (games / "ghz.game").string()}).code != 1);
}
