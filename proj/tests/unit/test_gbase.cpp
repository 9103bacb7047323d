#include <doctest.h>

#include <set>

#include "ncgame/gamealg.hpp"
#include "ncgame/gbase.hpp"
#include "ncgame/gns.hpp"
#include "support.hpp"

using namespace ncgame;
using namespace testing_support;

namespace {

std::vector<std::string> rule_strings(const RewriteSystem& r) {
  std::vector<std::string> out;
  for (const auto& p : r.rules()) out.push_back(p.to_string());
  return out;
}

// S-polynomials of every overlap and containment of two leading words,
// enumerated directly from the words.
std::vector<NCPoly> all_overlaps(const NCPoly& f, const NCPoly& g) {
  std::vector<NCPoly> out;
  const RingPtr& r = f.ring();
  const Word& a = f.leading_word();
  const Word& b = g.leading_word();
  for (std::size_t k = 1; k < std::min(a.size(), b.size()) + 1; ++k) {
    if (k < a.size() || k < b.size())
      if (a.suffix(k) == b.prefix(k)) {
        Word u = a.prefix(a.size() - k), v = b.suffix(b.size() - k);
        out.push_back(f.sandwich(Word{}, v) - g.sandwich(u, Word{}));
      }
  }
  if (a.size() > b.size())
    for (std::size_t p = 0; p + b.size() <= a.size(); ++p)
      if (a.sub(p, b.size()) == b)
        out.push_back(f - g.sandwich(a.prefix(p), a.suffix(a.size() - p - b.size())));
  (void)r;
  return out;
}

std::vector<NCPoly> ghz_generators() {
  DeterminingSet d = encode_xor({3, 2, 2}, {{{0, 0, 1}, 1}, {{0, 1, 0}, 1}, {{1, 0, 0}, 1}, {{1, 1, 1}, 0}});
  return augment({d.algebra.ring, d.algebra.relations, d.elements});
}

}  // namespace

TEST_CASE("reduction soundness: p - NF(p) is the traced ideal combination") {
  auto gens = ghz_generators();
  RewriteSystem R = complete(gens, 6);
  REQUIRE(R.is_complete());
  const RingPtr& ring = R.ring();
  for (int it = 0; it < 200; ++it) {
    NCPoly p = random_poly(ring, 5, 4);
    std::vector<DerivationStep> trace;
    NCPoly nf = R.normal_form(p, &trace);
    NCPoly sum(ring);
    for (const auto& s : trace) sum += R.rules().at(static_cast<std::size_t>(s.source)).sandwich(s.left, s.right) * s.coeff;
    CHECK(p - nf == sum);
    for (const auto& t : nf.terms()) CHECK(R.is_normal(t.word));
    CHECK(R.normal_form(nf) == nf);
  }
}

TEST_CASE("complete basis: S-polynomials reduce to 0 and ideal elements reduce to 0") {
  for (auto gens : {ghz_generators(), universal_relations({2, 2, 3}, Dialect::Projector).relations}) {
    RewriteSystem R = complete(gens, 6);
    REQUIRE(R.is_complete());
    for (const auto& f : R.rules())
      for (const auto& g : R.rules())
        for (const auto& s : all_overlaps(f, g)) CHECK(R.normal_form(s).is_zero());
    for (int it = 0; it < 200; ++it) CHECK(R.normal_form(random_ideal_element(gens, 3, 2)).is_zero());
  }
}

TEST_CASE("interreduced basis: no leading word divides another") {
  RewriteSystem R = complete(ghz_generators(), 6);
  for (std::size_t i = 0; i < R.rules().size(); ++i)
    for (std::size_t j = 0; j < R.rules().size(); ++j)
      if (i != j) CHECK(!R.rules()[i].leading_word().contains(R.rules()[j].leading_word()));
  for (const auto& p : R.rules()) CHECK(p.leading_coeff().is_one());
}

TEST_CASE("derivation log checks and detects tampering") {
  RewriteSystem R = complete(ghz_generators(), 6);
  REQUIRE(R.derivation());
  CHECK(!check_derivation(*R.derivation()));
  Derivation bad = *R.derivation();
  bad.entries.back().poly += NCPoly::constant(R.ring(), 1);
  CHECK(check_derivation(bad) == bad.entries.size() - 1);
  Derivation dangling = *R.derivation();
  dangling.entries.front().steps.front().source = 5;
  CHECK(check_derivation(dangling) == std::size_t{0});
}

TEST_CASE("mixed membership agrees with the quotient representation") {
  DeterminingSet d = encode_xor({3, 2, 2}, {{{0, 0, 1}, 1}, {{0, 1, 0}, 1}, {{1, 0, 0}, 1}, {{1, 1, 1}, 0}});
  AugmentedInput in{d.algebra.ring, d.algebra.relations, d.elements};
  auto base = member_mixed(NCPoly::constant(d.algebra.ring, 1), in, 6);
  REQUIRE(base.verdict == Membership::No);
  auto qb = build_quotient(base.system);
  REQUIRE(qb.status == BuildStatus::Finite);
  Strategy s = gns_matrices(qb.module, base.system);

  // Elements of I + L assembled at random are members.
  for (int it = 0; it < 100; ++it) {
    NCPoly p = random_ideal_element(d.algebra.relations, 2, 2);
    for (int j = 0; j < 2; ++j) {
      const NCPoly& e = d.elements[static_cast<std::size_t>(uniform(0, 3))];
      p += NCPoly::monomial(d.algebra.ring, random_word(*d.algebra.ring, 2), random_cyclo(*d.algebra.ring->field)) * e;
    }
    auto m = member_mixed(p, in, 6);
    CHECK(m.verdict == Membership::Yes);
    CHECK(apply_poly(s, p, s.state).empty());
  }
  // Random polynomials: membership iff the state is annihilated.
  int members = 0;
  for (int it = 0; it < 100; ++it) {
    NCPoly p = random_poly(d.algebra.ring, 3, 3, true);
    if (it % 4 == 0) p += NCPoly::constant(d.algebra.ring, 1);
    auto m = member_mixed(p, in, 6);
    bool kills = apply_poly(s, p, s.state).empty();
    CHECK((m.verdict == Membership::Yes) == kills);
    members += kills;
  }
  CHECK(members < 100);
}

TEST_CASE("completion is deterministic") {
  auto a = complete(ghz_generators(), 6);
  auto b = complete(ghz_generators(), 6);
  CHECK(rule_strings(a) == rule_strings(b));
  auto u = universal_relations({3, 2, 3}, Dialect::Projector).relations;
  CHECK(rule_strings(complete(u, 4)) == rule_strings(complete(u, 4)));
}

TEST_CASE("truncation is reported") {
  // x y x - y x y style braid relation does not complete at degree 3
  Variable x{"x"}, y{"y"};
  auto r = make_ring(CycloField::make(4), Alphabet({x, y}));
  auto rel = NCPoly::parse(r, "x y x - y x y");
  auto R = complete({rel, NCPoly::parse(r, "x x y - y")}, 3);
  CHECK(!R.is_complete());
  CHECK(member_two_sided(NCPoly::parse(r, "x"), R) != Membership::No);
}
