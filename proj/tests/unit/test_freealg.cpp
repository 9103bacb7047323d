#include <doctest.h>

#include <algorithm>

#include "ncgame/errors.hpp"
#include "ncgame/freealg.hpp"
#include "ncgame/gbase.hpp"
#include "support.hpp"

using namespace ncgame;
using namespace testing_support;

namespace {

RingPtr test_ring() {
  Variable a{"a"}, b{"b"}, u{"u", AdjointRule::Unitary, 3};
  return make_ring(CycloField::make(12), Alphabet({a, b, u}), MonomialOrder({2, 0, 1}));
}

// Graded lex by rank, written out directly.
int ref_compare(const MonomialOrder& o, const Word& x, const Word& y) {
  if (x.size() != y.size()) return x.size() < y.size() ? -1 : 1;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] != y[i]) return o.rank(x[i]) < o.rank(y[i]) ? -1 : 1;
  return 0;
}

}  // namespace

TEST_CASE("monomial order is graded lex and multiplicative") {
  auto r = test_ring();
  for (int it = 0; it < 300; ++it) {
    Word x = random_word(*r, 4), y = random_word(*r, 4), u = random_word(*r, 2), v = random_word(*r, 2);
    int c = ref_compare(r->order, x, y);
    auto s = r->order.compare(x, y);
    CHECK((s < 0) == (c < 0));
    CHECK((s == 0) == (c == 0));
    if (c < 0) CHECK(r->order.less(u * x * v, u * y * v));
  }
  CHECK(r->order.precedence() == std::vector<Letter>{2, 0, 1});
}

TEST_CASE("polynomials are canonical") {
  auto r = test_ring();
  auto one = Cyclo::one(*r->field);
  NCPoly p(r, {{Word{0}, one}, {Word{1, 0}, one}, {Word{0}, -one}, {Word{}, one}});
  REQUIRE(p.size() == 2);
  CHECK(p.leading_word() == Word{1, 0});
  for (int it = 0; it < 100; ++it) {
    NCPoly q = random_poly(r, 6, 3);
    for (std::size_t i = 1; i < q.terms().size(); ++i)
      CHECK(r->order.less(q.terms()[i].word, q.terms()[i - 1].word));
    for (const auto& t : q.terms()) CHECK(!t.coeff.is_zero());
  }
}

TEST_CASE("ring laws on random polynomials") {
  auto r = test_ring();
  for (int it = 0; it < 60; ++it) {
    NCPoly p = random_poly(r, 4, 3), q = random_poly(r, 4, 3), s = random_poly(r, 3, 2);
    CHECK((p * q) * s == p * (q * s));
    CHECK(p * (q + s) == p * q + p * s);
    CHECK((p + q) - q == p);
    CHECK((p - p).is_zero());
  }
}

TEST_CASE("adjoint is an anti-multiplicative conjugate-linear involution") {
  auto r = test_ring();
  // u* = u u is an inverse only once u^3 = 1 is imposed
  auto cube = RewriteSystem::from_rules(r, {NCPoly::parse(r, "u u u - 1")});
  for (int it = 0; it < 60; ++it) {
    NCPoly p = random_poly(r, 4, 3), q = random_poly(r, 4, 3);
    Cyclo c = random_cyclo(*r->field);
    CHECK(cube.normal_form(p.adjoint().adjoint()) == cube.normal_form(p));
    CHECK((p * q).adjoint() == q.adjoint() * p.adjoint());
    CHECK((p * c).adjoint() == p.adjoint() * c.conj());
  }
  CHECK(adjoint_word(r->alphabet, Word{0, 2, 1}) == Word{1, 2, 2, 0});
}

TEST_CASE("parse and to_string round trip") {
  auto r = test_ring();
  for (int it = 0; it < 80; ++it) {
    NCPoly p = random_poly(r, 5, 3);
    CHECK(NCPoly::parse(r, p.to_string()) == p);
  }
  CHECK(NCPoly::parse(r, "a*b - 2 u·a + (z^3) b + 1/2").size() == 4);
  CHECK_THROWS(NCPoly::parse(r, "a c"));
  CHECK(word_to_string(r->alphabet, Word{}) == "1");
  CHECK(parse_word(r->alphabet, "a u b") == Word{0, 2, 1});
}

TEST_CASE("embedding into a larger ring keeps names") {
  auto r = test_ring();
  auto x = r->with_auxiliary();
  NCPoly p = random_poly(r, 5, 3);
  NCPoly q = p.embed(x);
  CHECK(q.to_string() == p.to_string());
  CHECK(x->alphabet.auxiliary() == Letter{3});
  CHECK(x->order.rank(3) == 3);
  CHECK_THROWS_AS(x->with_auxiliary(), UsageError);
}

TEST_CASE("alphabet rejects bad names") {
  Alphabet a;
  a.add(Variable{"x"});
  CHECK_THROWS_AS(a.add(Variable{"x"}), UsageError);
  CHECK_THROWS_AS(a.add(Variable{"1x"}), UsageError);
  CHECK_THROWS_AS(a.index("y"), UsageError);
}
