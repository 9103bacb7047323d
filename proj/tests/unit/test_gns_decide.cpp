#include <doctest.h>

#include "ncgame/decide.hpp"
#include "ncgame/errors.hpp"
#include "ncgame/gns.hpp"
#include "support.hpp"

using namespace ncgame;
using namespace testing_support;

namespace {

DeterminingSet chsh() { return encode_xor({2, 2, 2}, {{{0, 0}, 0}, {{0, 1}, 0}, {{1, 0}, 0}, {{1, 1}, 1}}); }
DeterminingSet ghz() {
  return encode_xor({3, 2, 2}, {{{0, 0, 1}, 1}, {{0, 1, 0}, 1}, {{1, 0, 0}, 1}, {{1, 1, 1}, 0}});
}

// Brute-force: does some +-1 assignment satisfy every xor clause?
bool classically_satisfiable(const GameShape& sh, const std::vector<XorClause>& cl) {
  int letters = sh.players * sh.questions;
  for (int mask = 0; mask < (1 << letters); ++mask) {
    bool ok = true;
    for (const auto& c : cl) {
      int parity = 0;
      for (int p = 0; p < sh.players; ++p)
        if (c.questions[static_cast<std::size_t>(p)] >= 0)
          parity ^= (mask >> (p * sh.questions + c.questions[static_cast<std::size_t>(p)])) & 1;
      ok = ok && parity == c.sign;
    }
    if (ok) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("GHZ quotient is 8-dimensional and a *-representation") {
  auto d = ghz();
  auto m = member_mixed(NCPoly::constant(d.algebra.ring, 1), {d.algebra.ring, d.algebra.relations, d.elements}, 6);
  auto qb = build_quotient(m.system);
  REQUIRE(qb.status == BuildStatus::Finite);
  CHECK(qb.module.dimension() == 8);
  Strategy s = gns_matrices(qb.module, m.system);
  auto rep = verify_strategy(s, d);
  CHECK(rep.pass);
  CHECK(rep.warnings.empty());
  for (std::size_t l = 0; l < 6; ++l) {
    const auto& M = s.matrices[l];
    CHECK(M * M == CycloMatrix::identity(*d.algebra.ring->field, 8));
  }
}

TEST_CASE("quotient build rejects bad input") {
  auto d = chsh();
  auto R = complete(d.algebra.relations, 6);
  CHECK_THROWS_AS(build_quotient(R), UsageError);
  auto m = member_mixed(NCPoly::constant(d.algebra.ring, 1), {d.algebra.ring, d.algebra.relations, d.elements}, 6);
  CHECK(build_quotient(m.system).status == BuildStatus::Zero);
}

TEST_CASE("verify_strategy catches a wrong matrix") {
  auto d = ghz();
  auto v = decide(d);
  REQUIRE(v.witness);
  Strategy s = *v.witness;
  s.matrices[0] = s.matrices[1];
  CHECK(!verify_strategy(s, d).pass);
}

TEST_CASE("decide on small games") {
  CHECK(decide(chsh()).outcome == Outcome::NoPerfect);
  auto g = decide(ghz());
  CHECK(g.outcome == Outcome::Perfect);
  REQUIRE(g.witness);
  CHECK(g.witness->dimension() == 8);
  CHECK(exit_code(Outcome::Perfect) == 0);
  CHECK(exit_code(Outcome::NoPerfect) == 1);
  CHECK(exit_code(Outcome::Unknown) == 2);
}

TEST_CASE("xor games: perfect whenever classically satisfiable") {
  for (int it = 0; it < 40; ++it) {
    GameShape sh{2, 2, 2};
    std::vector<XorClause> cl;
    int n = uniform(1, 4);
    for (int j = 0; j < n; ++j) cl.push_back({{uniform(0, 1), uniform(0, 1)}, uniform(0, 1)});
    auto v = decide(encode_xor(sh, cl));
    if (classically_satisfiable(sh, cl)) CHECK(v.outcome == Outcome::Perfect);
  }
}

TEST_CASE("norm obstruction") {
  auto d = chsh();
  Cyclo two(*d.algebra.ring->field, Rational(2));
  d.toric->at(0).beta = two;
  d.elements[0] = NCPoly::monomial(d.algebra.ring, d.toric->at(0).word, two) - NCPoly::constant(d.algebra.ring, 1);
  auto v = decide(d);
  CHECK(v.outcome == Outcome::NoPerfect);
  REQUIRE(v.norm);
  CHECK(v.norm->clause == 0);
  CHECK(v.norm->norm_squared == Cyclo(*d.algebra.ring->field, Rational(4)));
}

TEST_CASE("subgroup check") {
  auto d = chsh();
  auto U = complete(d.algebra.relations, 6);
  auto ob = subgroup_check({*d.toric, &U}, 8);
  REQUIRE(ob);
  CHECK(ob->factors.size() == 4);
  CHECK(ob->phase == Cyclo(*d.algebra.ring->field, Rational(-1)));
  // recompute the product independently
  const auto& f = *d.algebra.ring->field;
  NCPoly prod = NCPoly::constant(d.algebra.ring, 1);
  for (auto [i, inv] : ob->factors) {
    const auto& c = (*d.toric)[i];
    NCPoly h = NCPoly::monomial(d.algebra.ring, c.word, c.beta);
    prod = prod * (inv ? h.adjoint() : h);
  }
  CHECK(U.normal_form(prod) == NCPoly::constant(d.algebra.ring, ob->phase));
  (void)f;

  auto g = ghz();
  auto UG = complete(g.algebra.relations, 6);
  CHECK(!subgroup_check({*g.toric, &UG}, 6));

  auto single = encode_xor({2, 2, 2}, {{{0, 1}, 0}});
  auto US = complete(single.algebra.relations, 6);
  CHECK(!subgroup_check({*single.toric, &US}, 8));
}

TEST_CASE("classical witness search") {
  auto s = classical_witness(encode_xor({2, 2, 2}, {{{0, 0}, 1}, {{1, 1}, 0}}));
  REQUIRE(s);
  CHECK(s->dimension() == 1);
  CHECK(!classical_witness(chsh()));
}
