#include "ncgame/exact_linalg.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_map>

#include "ncgame/errors.hpp"

namespace ncgame {

namespace {

// a += s * b
void axpy(SparseRow& a, const Rational& s, const SparseRow& b) {
  SparseRow out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(std::move(a[i++]));
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, s * b[j].second);
      ++j;
    } else {
      Rational v = a[i].second + s * b[j].second;
      if (sgn(v) != 0) out.emplace_back(a[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  a = std::move(out);
}

const Rational* find_entry(const SparseRow& r, std::size_t c) {
  auto it = std::lower_bound(r.begin(), r.end(), c, [](const auto& e, std::size_t k) { return e.first < k; });
  return it != r.end() && it->first == c ? &it->second : nullptr;
}

}  // namespace

std::vector<std::size_t> EchelonForm::free_columns() const {
  std::vector<bool> piv(columns, false);
  for (auto p : pivots) piv[p] = true;
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < columns; ++c)
    if (!piv[c]) out.push_back(c);
  return out;
}

void EchelonForm::solve_pivots(std::vector<Rational>& x) const {
  for (std::size_t i = 0; i < rows.size(); ++i) {
    Rational v = rhs[i];
    for (const auto& [c, a] : rows[i])
      if (c != pivots[i]) v -= a * x[c];
    x[pivots[i]] = v;
  }
}

EchelonForm echelon(std::size_t columns, const std::vector<SparseRow>& input, const std::vector<Rational>& b) {
  if (input.size() != b.size()) throw UsageError("echelon: one right-hand side per row required");
  EchelonForm E;
  E.columns = columns;
  std::unordered_map<std::size_t, std::size_t> pivot_row;
  std::vector<std::set<std::size_t>> occ(columns);

  // short rows first keeps fill-in low
  std::vector<std::size_t> order(input.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return input[a].size() < input[b].size(); });
  std::vector<std::size_t> weight(columns, 0);
  for (const auto& r : input)
    for (const auto& [c, v] : r) ++weight[c];

  for (std::size_t src : order) {
    SparseRow row = input[src];
    Rational rhs = b[src];
    // pivot rows carry no other pivot columns, so one pass clears them all
    std::vector<std::pair<std::size_t, Rational>> hits;
    for (const auto& [c, v] : row)
      if (auto it = pivot_row.find(c); it != pivot_row.end()) hits.emplace_back(it->second, v);
    for (const auto& [i, v] : hits) {
      axpy(row, -v, E.rows[i]);
      rhs -= v * E.rhs[i];
    }
    if (row.empty()) {
      if (sgn(rhs) != 0 && E.consistent) {
        E.consistent = false;
        E.inconsistent_row = src;
      }
      continue;
    }
    std::size_t best = row.front().first;
    for (const auto& [c, v] : row)
      if (std::pair(occ[c].size(), weight[c]) < std::pair(occ[best].size(), weight[best]) ||
          (occ[c].size() == occ[best].size() && weight[c] == weight[best] && c > best))
        best = c;
    Rational inv = 1 / *find_entry(row, best);
    for (auto& [c, v] : row) v *= inv;
    rhs *= inv;

    const std::size_t me = E.rows.size();
    std::vector<std::size_t> users(occ[best].begin(), occ[best].end());
    for (std::size_t i : users) {
      Rational v = *find_entry(E.rows[i], best);
      for (const auto& [c, x] : E.rows[i]) occ[c].erase(i);
      axpy(E.rows[i], -v, row);
      E.rhs[i] -= v * rhs;
      for (const auto& [c, x] : E.rows[i]) occ[c].insert(i);
    }
    for (const auto& [c, v] : row) occ[c].insert(me);
    pivot_row.emplace(best, me);
    E.pivots.push_back(best);
    E.rows.push_back(std::move(row));
    E.rhs.push_back(std::move(rhs));
    E.source.push_back(src);
  }
  return E;
}

LDLT ldlt(const DenseMatrixQ& m) {
  const std::size_t n = m.size();
  for (const auto& row : m)
    if (row.size() != n) throw UsageError("ldlt: matrix is not square");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (m[i][j] != m[j][i]) throw UsageError("ldlt: matrix is not symmetric");
  LDLT out;
  out.L.assign(n, std::vector<Rational>(n, Rational(0)));
  out.D.assign(n, Rational(0));
  // A holds the Schur complement in its lower triangle
  DenseMatrixQ A = m;
  for (std::size_t k = 0; k < n; ++k) {
    out.L[k][k] = 1;
    const Rational d = A[k][k];
    if (sgn(d) < 0) {
      out.failed_at = k;
      return out;
    }
    if (sgn(d) == 0) {
      for (std::size_t i = k + 1; i < n; ++i)
        if (sgn(A[i][k]) != 0) {
          out.failed_at = k;
          return out;
        }
      continue;
    }
    out.D[k] = d;
    for (std::size_t i = k + 1; i < n; ++i) out.L[i][k] = A[i][k] / d;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (sgn(A[i][k]) == 0) continue;
      const Rational& lik = out.L[i][k];
      for (std::size_t j = k + 1; j <= i; ++j)
        if (sgn(A[j][k]) != 0) A[i][j] -= lik * A[j][k];
    }
  }
  out.psd = true;
  return out;
}

DenseMatrixQ ldlt_product(const DenseMatrixQ& L, const std::vector<Rational>& D) {
  const std::size_t n = L.size();
  DenseMatrixQ M(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      Rational s = 0;
      for (std::size_t k = 0; k <= j; ++k)
        if (sgn(D[k]) != 0 && sgn(L[i][k]) != 0 && sgn(L[j][k]) != 0) s += L[i][k] * D[k] * L[j][k];
      M[i][j] = s;
      M[j][i] = s;
    }
  return M;
}

Rational approximate(double x, long bound) {
  if (!std::isfinite(x)) throw UsageError("cannot rationalize a non-finite value");
  if (bound < 1) bound = 1;
  // convergents p/q of the continued fraction of x
  mpz_class p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double r = x;
  for (int it = 0; it < 64; ++it) {
    double a = std::floor(r);
    mpz_class ai(a);
    mpz_class p2 = ai * p1 + p0, q2 = ai * q1 + q0;
    if (q2 > bound) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    double frac = r - a;
    if (frac < 1e-15) break;
    r = 1 / frac;
  }
  if (q1 == 0) return Rational(mpz_class(std::round(x)));
  Rational out(p1, q1);
  out.canonicalize();
  return out;
}

}  // namespace ncgame
