#include <doctest.h>

#include <cmath>

#include "ncgame/decide.hpp"
#include "ncgame/exact_linalg.hpp"
#include "ncgame/gamealg.hpp"
#include "ncgame/soscert.hpp"
#include "support.hpp"

using namespace ncgame;
using namespace testing_support;

namespace {

// Dense Gaussian elimination: rank of [A | b] and of A.
std::pair<std::size_t, std::size_t> ranks(std::size_t cols, const std::vector<SparseRow>& rows,
                                          const std::vector<Rational>& rhs) {
  std::vector<std::vector<Rational>> m;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::vector<Rational> r(cols + 1, Rational(0));
    for (const auto& [c, v] : rows[i]) r[c] = v;
    r[cols] = rhs[i];
    m.push_back(r);
  }
  auto rank_upto = [&](std::size_t width) {
    auto a = m;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < width && rank < a.size(); ++c) {
      std::size_t p = rank;
      while (p < a.size() && a[p][c] == 0) ++p;
      if (p == a.size()) continue;
      std::swap(a[p], a[rank]);
      for (std::size_t i = 0; i < a.size(); ++i)
        if (i != rank && a[i][c] != 0) {
          Rational f = a[i][c] / a[rank][c];
          for (std::size_t k = c; k <= cols; ++k) a[i][k] -= f * a[rank][k];
        }
      ++rank;
    }
    return rank;
  };
  return {rank_upto(cols), rank_upto(cols + 1)};
}

}  // namespace

TEST_CASE("echelon form against dense elimination") {
  for (int it = 0; it < 60; ++it) {
    std::size_t cols = static_cast<std::size_t>(uniform(1, 7)), nrows = static_cast<std::size_t>(uniform(1, 8));
    std::vector<SparseRow> rows;
    std::vector<Rational> rhs;
    for (std::size_t i = 0; i < nrows; ++i) {
      SparseRow r;
      for (std::size_t c = 0; c < cols; ++c)
        if (uniform(0, 2) == 0) r.emplace_back(c, Rational(uniform(-3, 3)));
      r.erase(std::remove_if(r.begin(), r.end(), [](const auto& e) { return e.second == 0; }), r.end());
      rows.push_back(r);
      rhs.emplace_back(uniform(-2, 2));
    }
    if (it % 3 == 0 && nrows > 1) {  // force a dependent row
      rows.back() = rows.front();
      rhs.back() = rhs.front();
    }
    auto e = echelon(cols, rows, rhs);
    auto [ra, rab] = ranks(cols, rows, rhs);
    CHECK(e.consistent == (ra == rab));
    if (!e.consistent) continue;
    CHECK(e.rows.size() == ra);
    std::vector<Rational> x(cols, Rational(0));
    for (std::size_t c : e.free_columns()) x[c] = Rational(uniform(-5, 5));
    e.solve_pivots(x);
    for (std::size_t i = 0; i < nrows; ++i) {
      Rational s = 0;
      for (const auto& [c, v] : rows[i]) s += v * x[c];
      CHECK(s == rhs[i]);
    }
  }
}

TEST_CASE("exact LDLT decides PSD") {
  for (int it = 0; it < 30; ++it) {
    std::size_t n = static_cast<std::size_t>(uniform(1, 6)), k = static_cast<std::size_t>(uniform(1, 6));
    DenseMatrixQ B(n, std::vector<Rational>(k));
    for (auto& r : B)
      for (auto& v : r) v = Rational(uniform(-3, 3));
    DenseMatrixQ M(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t t = 0; t < k; ++t) M[i][j] += B[i][t] * B[j][t];
    auto f = ldlt(M);
    REQUIRE(f.psd);
    CHECK(ldlt_product(f.L, f.D) == M);
    for (const auto& d : f.D) CHECK(d >= 0);
    M[0][0] -= 1 + M[0][0];  // now M[0][0] = -1
    CHECK(!ldlt(M).psd);
  }
  DenseMatrixQ m{{Rational(0), Rational(1)}, {Rational(1), Rational(0)}};
  CHECK(!ldlt(m).psd);
}

TEST_CASE("continued-fraction convergents are best among smaller denominators") {
  for (int it = 0; it < 50; ++it) {
    double x = std::uniform_real_distribution<double>(-3, 3)(rng());
    long bound = uniform(1, 40);
    Rational q = approximate(x, bound);
    CHECK(q.get_den() <= bound);
    double err = std::abs(q.get_d() - x);
    long qd = q.get_den().get_si();
    // the next convergent's denominator exceeds the bound
    CHECK(err <= 1.0 / (static_cast<double>(qd) * static_cast<double>(bound + 1)) + 1e-12);
    for (long d = 1; d <= qd; ++d) {
      double best_num = std::round(x * static_cast<double>(d));
      CHECK(err <= std::abs(best_num / static_cast<double>(d) - x) + 1e-12);
    }
  }
}

TEST_CASE("gram problem for a commutative toy ideal") {
  // e^2 = e and 2e = 1 together force 1 into the ideal
  Variable e{"e"};
  auto r = make_ring(CycloField::make(4), Alphabet({e}));
  auto R = std::make_shared<const RewriteSystem>(complete({NCPoly::parse(r, "e e - e"), NCPoly::parse(r, "2 e - 1")}, 4));
  CHECK(R->normal_form(NCPoly::constant(r, 1)).is_zero());
  auto g = gram_setup(R, 1);
  CHECK(g.rows.empty());
}

TEST_CASE("K4 has no quantum 3-coloring") {
  auto c = encode_coloring(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}, {1, 3}}, 3);
  SosOptions o;
  o.degree = 1;
  auto a = decide_synchronous_nocolor(c.generators(), o);
  REQUIRE(a.outcome == Outcome::NoPerfect);
  REQUIRE(a.certificate);
  CHECK(check_certificate(*a.certificate).ok);
}

TEST_CASE("certificate checker rejects tampering") {
  // x x + 1 = 1 + x^* x needs a genuine sum of squares
  Variable x{"x"};
  auto r = make_ring(CycloField::make(4), Alphabet({x}));
  SosOptions o;
  o.degree = 1;
  auto a = decide_synchronous_nocolor({NCPoly::parse(r, "x x + 1")}, o);
  REQUIRE(a.outcome == Outcome::NoPerfect);
  REQUIRE(a.certificate);
  CHECK(a.certificate->words.size() == 2);
  CHECK(check_certificate(*a.certificate).ok);
  REQUIRE(!a.certificate->terms.empty());
auto bad = *a.certificate;
  bad.terms.front().weight += 1;
  CHECK(!check_certificate(bad).ok);
  auto neg = *a.certificate;
  neg.terms.front().weight = -1;
  CHECK(!check_certificate(neg).ok);
  auto shifted = *a.certificate;
  for (std::size_t i = 0; i < shifted.M.size(); ++i) shifted.M[i][i] += 1;
  CHECK(!check_certificate(shifted).ok);
}

TEST_CASE("sos never certifies a colorable graph") {
  auto c = encode_coloring(3, {{0, 1}, {1, 2}}, 2);
  for (std::size_t d : {1u, 2u}) {
    SosOptions o;
    o.degree = d;
    auto a = decide_synchronous_nocolor(c.generators(), o);
    CHECK(a.outcome != Outcome::NoPerfect);
    CHECK(!a.certificate);
  }
  auto edgeless = encode_coloring(2, {}, 1);
  SosOptions o;
  o.degree = 1;
  CHECK(decide_synchronous_nocolor(edgeless.generators(), o).outcome != Outcome::NoPerfect);
}
