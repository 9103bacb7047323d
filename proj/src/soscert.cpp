#include "ncgame/soscert.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <unordered_map>

#include <Eigen/Sparse>

#include "ncgame/errors.hpp"

namespace ncgame {

std::size_t GramProblem::variable(std::size_t r, std::size_t c) const {
  if (r > c) std::swap(r, c);
  const std::size_t n = words.size();
  return r * n - r * (r - 1) / 2 + (c - r);
}

std::vector<Word> normal_words(const RewriteSystem& r, std::size_t d) {
  std::vector<Word> all{Word{}};
  std::vector<Word> layer{Word{}};
  const std::size_t letters = r.ring()->alphabet.size();
  for (std::size_t k = 1; k <= d; ++k) {
    std::vector<Word> next;
    for (const auto& w : layer)
      for (std::size_t g = 0; g < letters; ++g) {
        Word x = w * Word{static_cast<Letter>(g)};
        if (r.is_normal(x)) next.push_back(std::move(x));
      }
    all.insert(all.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  if (!r.is_normal(Word{})) all.erase(all.begin());
  const auto& ord = r.ring()->order;
  std::sort(all.begin(), all.end(), [&](const Word& a, const Word& b) { return ord.less(a, b); });
  return all;
}

GramProblem gram_setup(std::shared_ptr<const RewriteSystem> r, std::size_t d) {
  GramProblem g;
  g.system = r;
  g.degree = d;
  g.words = normal_words(*r, d);
  const RingPtr& ring = r->ring();
  const auto& alpha = ring->alphabet;
  const std::size_t n = g.words.size();

  std::unordered_map<Word, std::map<std::size_t, Rational>, WordHash> acc;
  if (!r->is_normal(Word{})) return g;  // 1 lies in the ideal; nothing to solve
  acc[Word{}];
  auto add = [&](const NCPoly& p, std::size_t var) {
    for (const auto& t : p.terms()) {
      if (!t.coeff.is_rational()) throw UsageError("Gram setup supports rational ideals only");
      auto& row = acc[t.word];
      auto [it, fresh] = row.emplace(var, t.coeff.rational_part());
      if (!fresh) {
        it->second += t.coeff.rational_part();
        if (sgn(it->second) == 0) row.erase(it);
      }
    }
  };
  std::vector<Word> adj;
  for (const auto& w : g.words) adj.push_back(adjoint_word(alpha, w));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const std::size_t var = g.variable(i, j);
      add(r->normal_form(NCPoly::monomial(ring, adj[i] * g.words[j])), var);
      if (i != j) add(r->normal_form(NCPoly::monomial(ring, adj[j] * g.words[i])), var);
    }

  for (const auto& [w, row] : acc) g.constraint_words.push_back(w);
  const auto& ord = ring->order;
  std::sort(g.constraint_words.begin(), g.constraint_words.end(),
            [&](const Word& a, const Word& b) { return ord.less(a, b); });
  for (const auto& w : g.constraint_words) {
    const auto& row = acc[w];
    g.rows.emplace_back(row.begin(), row.end());
    g.rhs.push_back(w.empty() ? Rational(-1) : Rational(0));
  }
  return g;
}

std::string to_string(SdpStatus s) {
  switch (s) {
    case SdpStatus::Feasible: return "feasible";
    case SdpStatus::Infeasible: return "infeasible";
    case SdpStatus::Undetermined: return "undetermined";
  }
  return "?";
}

namespace {

Eigen::MatrixXd to_dense(const GramProblem& g, const Eigen::VectorXd& x) {
  const std::size_t n = g.size();
  Eigen::MatrixXd M(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = r; c < n; ++c) M(r, c) = M(c, r) = x[static_cast<Eigen::Index>(g.variable(r, c))];
  return M;
}

Eigen::VectorXd to_vars(const GramProblem& g, const Eigen::MatrixXd& M) {
  const std::size_t n = g.size();
  Eigen::VectorXd x(static_cast<Eigen::Index>(g.variables()));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = r; c < n; ++c) x[static_cast<Eigen::Index>(g.variable(r, c))] = M(r, c);
  return x;
}

DenseMatrixQ unique_solution(const GramProblem& g, const EchelonForm& e) {
  std::vector<Rational> x(g.variables(), Rational(0));
  e.solve_pivots(x);
  const std::size_t n = g.size();
  DenseMatrixQ M(n, std::vector<Rational>(n));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = r; c < n; ++c) M[r][c] = M[c][r] = x[g.variable(r, c)];
  return M;
}

}  // namespace

SdpResult solve_feasibility(const GramProblem& g, const SdpOptions& opts) {
  return solve_feasibility(g, echelon(g.variables(), g.rows, g.rhs), opts);
}

SdpResult solve_feasibility(const GramProblem& g, const EchelonForm& e, const SdpOptions& opts) {
  SdpResult res;
  const std::size_t n = g.size();
  const auto N = static_cast<Eigen::Index>(g.variables());
  if (!e.consistent) {
    res.status = SdpStatus::Infeasible;
    res.evidence = "linear constraints are inconsistent (word " +
                   word_to_string(g.system->ring()->alphabet, g.constraint_words[*e.inconsistent_row]) + ")";
    return res;
  }
  if (e.free_columns().empty()) {
    auto M = unique_solution(g, e);
    auto f = ldlt(M);
    res.M = Eigen::MatrixXd(n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) res.M(r, c) = M[r][c].get_d();
    res.min_eigenvalue = n ? Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(res.M).eigenvalues().minCoeff() : 0;
    res.status = f.psd ? SdpStatus::Feasible : SdpStatus::Infeasible;
    res.evidence = f.psd ? "unique solution is PSD" : "the constraints have a unique solution and it is not PSD";
    return res;
  }

  // Frobenius geometry: off-diagonal variables count twice
  Eigen::VectorXd scale(N);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = r; c < n; ++c) scale[static_cast<Eigen::Index>(g.variable(r, c))] = r == c ? 1.0 : std::sqrt(2.0);

  const auto m = static_cast<Eigen::Index>(e.source.size());
  std::vector<Eigen::Triplet<double>> trip;
  Eigen::VectorXd b(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const auto src = e.source[static_cast<std::size_t>(i)];
    for (const auto& [c, v] : g.rows[src])
      trip.emplace_back(i, static_cast<Eigen::Index>(c), v.get_d() / scale[static_cast<Eigen::Index>(c)]);
    b[i] = g.rhs[src].get_d();
  }
  Eigen::SparseMatrix<double> A(m, N);
  A.setFromTriplets(trip.begin(), trip.end());
  Eigen::SparseMatrix<double> At = A.transpose();
  Eigen::SparseMatrix<double> K = A * At;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> chol(K);
  if (chol.info() != Eigen::Success) {
    res.evidence = "normal equations could not be factored";
    return res;
  }
  auto project_affine = [&](const Eigen::VectorXd& y) -> Eigen::VectorXd {
    Eigen::VectorXd r = A * y - b;
    return y - At * chol.solve(r);
  };

  const double delta = opts.margin;
  const auto nn = static_cast<Eigen::Index>(n);
  auto project_psd = [&](const Eigen::VectorXd& y, Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>& es) {
    es.compute(to_dense(g, y.cwiseQuotient(scale)));
    Eigen::VectorXd lam = es.eigenvalues().cwiseMax(delta);
    Eigen::MatrixXd P = es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().transpose();
    return Eigen::VectorXd(to_vars(g, P).cwiseProduct(scale));
  };
  // Douglas-Rachford on the two projections; z is the governing sequence
  Eigen::VectorXd z = to_vars(g, Eigen::MatrixXd::Identity(nn, nn)).cwiseProduct(scale);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es, check;
  double first_step = -1;
  for (std::size_t sweep = 1; sweep <= opts.max_sweeps; ++sweep) {
    Eigen::VectorXd pc = project_psd(z, es);
    Eigen::VectorXd pa = project_affine(2 * pc - z);
    Eigen::VectorXd step = pa - pc;
    z += step;
    res.sweeps = sweep;
    const double sn = step.norm();
    if (first_step < 0) first_step = sn;
    if (sweep % 10 == 0 || sn < opts.tol) {
      Eigen::MatrixXd M = to_dense(g, pa.cwiseQuotient(scale));
      check.compute(M, Eigen::EigenvaluesOnly);
      res.min_eigenvalue = check.eigenvalues().minCoeff();
      res.residual = (A * pa - b).norm();
      if (res.min_eigenvalue >= delta / 2) {
        res.status = SdpStatus::Feasible;
        res.M = std::move(M);
        return res;
      }
      // for an infeasible pair the iterates drift off at a constant rate
      if (sweep >= 2000 && sn > 1e-6 && z.norm() > 1e6 * std::max(first_step, 1.0)) {
        res.status = SdpStatus::Infeasible;
        res.residual = sn;
        res.evidence = "splitting iterates diverge (step " + std::to_string(sn) + ")";
        return res;
      }
    }
  }
  res.status = SdpStatus::Undetermined;
  res.evidence = "no feasible point after " + std::to_string(opts.max_sweeps) + " sweeps";
  return res;
}

std::vector<long> default_denominator_schedule() {
  return {1000, 10000, 100000, 1000000, 10000000, 100000000};
}

namespace {

std::vector<SosTerm> terms_from_ldlt(const LDLT& f) {
  std::vector<SosTerm> out;
  const std::size_t n = f.D.size();
  for (std::size_t j = 0; j < n; ++j) {
    if (sgn(f.D[j]) == 0) continue;
    SosTerm t{f.D[j], {}};
    for (std::size_t r = j; r < n; ++r)
      if (sgn(f.L[r][j]) != 0) t.coeffs.emplace_back(r, f.L[r][j]);
    out.push_back(std::move(t));
  }
  return out;
}

std::optional<std::vector<SosTerm>> dominance_decomposition(const DenseMatrixQ& M, long q) {
  const std::size_t n = M.size();
  const auto nn = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd F(nn, nn);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) F(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = M[r][c].get_d();
  const double lmin = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(F, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
  if (!(lmin > 0)) return std::nullopt;
  Eigen::LLT<Eigen::MatrixXd> llt(F - 0.5 * lmin * Eigen::MatrixXd::Identity(nn, nn));
  if (llt.info() != Eigen::Success) return std::nullopt;
  Eigen::MatrixXd Lf = llt.matrixL();

  // L = K / q with K integral
  std::vector<std::vector<mpz_class>> K(n, std::vector<mpz_class>(n));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c <= r; ++c)
      K[r][c] = mpz_class(std::round(Lf(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) * static_cast<double>(q)));
  const mpz_class q2 = mpz_class(q) * q;
  DenseMatrixQ E(n, std::vector<Rational>(n));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c <= r; ++c) {
      mpz_class s = 0;
      for (std::size_t k = 0; k <= c; ++k)
        if (K[r][k] != 0 && K[c][k] != 0) s += K[r][k] * K[c][k];
      Rational e = M[r][c] - Rational(s, q2);
      e.canonicalize();
      E[r][c] = E[c][r] = e;
    }
  std::vector<SosTerm> out;
  for (std::size_t c = 0; c < n; ++c) {
    SosTerm t{Rational(1), {}};
    for (std::size_t r = c; r < n; ++r)
      if (K[r][c] != 0) {
        Rational v(K[r][c], mpz_class(q));
        v.canonicalize();
        t.coeffs.emplace_back(r, v);
      }
    if (!t.coeffs.empty()) out.push_back(std::move(t));
  }
  for (std::size_t i = 0; i < n; ++i) {
    Rational slack = E[i][i];
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) slack -= abs(E[i][j]);
    if (sgn(slack) < 0) return std::nullopt;
    for (std::size_t j = i + 1; j < n; ++j)
      if (sgn(E[i][j]) != 0)
        out.push_back(SosTerm{abs(E[i][j]), {{i, Rational(1)}, {j, Rational(sgn(E[i][j]))}}});
    if (sgn(slack) > 0) out.push_back(SosTerm{slack, {{i, Rational(1)}}});
  }
  return out;
}

}  // namespace

std::optional<std::vector<SosTerm>> psd_decomposition(const DenseMatrixQ& M) {
  if (M.size() <= 48) {
    auto f = ldlt(M);
    if (f.psd) return terms_from_ldlt(f);
    return std::nullopt;
  }
  for (long q : {1L << 20, 1L << 26, 1L << 32, 1L << 40})
    if (auto t = dominance_decomposition(M, q)) return t;
  return std::nullopt;
}

RationalizeResult rationalize_and_verify(const Eigen::MatrixXd& M, const GramProblem& g, const EchelonForm& e,
                                         const std::vector<long>& schedule) {
  RationalizeResult out;
  const std::size_t n = g.size();
  if (static_cast<std::size_t>(M.rows()) != n || static_cast<std::size_t>(M.cols()) != n)
    throw UsageError("float matrix does not match the Gram problem");
  if (!e.consistent) {
    out.log.push_back("constraints are inconsistent");
    return out;
  }
  std::vector<std::pair<std::size_t, std::size_t>> cell(g.variables());
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = r; c < n; ++c) cell[g.variable(r, c)] = {r, c};
  const auto free = e.free_columns();
  for (long bound : schedule) {
    std::vector<Rational> x(g.variables(), Rational(0));
    for (std::size_t k : free)
      x[k] = approximate(M(static_cast<Eigen::Index>(cell[k].first), static_cast<Eigen::Index>(cell[k].second)), bound);
    e.solve_pivots(x);
    RationalCertificate cert;
    cert.system = g.system;
    cert.degree = g.degree;
    cert.words = g.words;
    cert.denominator = bound;
    cert.M.assign(n, std::vector<Rational>(n));
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = r; c < n; ++c) cert.M[r][c] = cert.M[c][r] = x[g.variable(r, c)];
    auto terms = psd_decomposition(cert.M);
    if (!terms) {
      out.log.push_back("denominator " + std::to_string(bound) + ": no exact PSD decomposition");
      continue;
    }
    cert.terms = std::move(*terms);
    auto chk = check_certificate(cert);
    out.log.push_back("denominator " + std::to_string(bound) + ": " + (chk.ok ? "verified" : chk.detail));
    if (chk.ok) {
      out.certificate = std::move(cert);
      return out;
    }
  }
  return out;
}

CertificateCheck check_certificate(const RationalCertificate& c) {
  CertificateCheck res;
  const std::size_t n = c.words.size();
  if (!c.system) {
    res.detail = "no rewriting system";
    return res;
  }
  if (c.M.size() != n) {
    res.detail = "matrix size does not match the word list";
    return res;
  }
  for (const auto& row : c.M)
    if (row.size() != n) {
      res.detail = "matrix size does not match the word list";
      return res;
    }
  // Gram matrix of the s_j
  DenseMatrixQ G(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t j = 0; j < c.terms.size(); ++j) {
    const auto& t = c.terms[j];
    if (sgn(t.weight) < 0) {
      res.detail = "negative weight on term " + std::to_string(j);
      return res;
    }
    for (const auto& [r, a] : t.coeffs) {
      if (r >= n) {
        res.detail = "term " + std::to_string(j) + " refers to a word outside W_d";
        return res;
      }
      const Rational wa = t.weight * a;
      for (const auto& [col, b] : t.coeffs)
        if (col <= r) G[r][col] += wa * b;
    }
  }
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t col = 0; col <= r; ++col) {
      G[col][r] = G[r][col];
      if (G[r][col] != c.M[r][col] || c.M[r][col] != c.M[col][r]) {
        res.detail = "sum of weighted terms differs from M at (" + std::to_string(r) + ", " + std::to_string(col) + ")";
        return res;
      }
    }
  const RewriteSystem& R = *c.system;
  const RingPtr& ring = R.ring();
  for (const auto& w : c.words)
    if (!R.is_normal(w)) {
      res.detail = "word list contains a reducible word";
      return res;
    }
  std::unordered_map<Word, Rational, WordHash> total;
  const NCPoly one = R.normal_form(NCPoly::constant(ring, 1));
  for (const auto& t : one.terms()) total[t.word] = t.coeff.rational_part();
  for (std::size_t r = 0; r < n; ++r) {
    const Word a = adjoint_word(ring->alphabet, c.words[r]);
    for (std::size_t col = 0; col < n; ++col) {
      if (sgn(G[r][col]) == 0) continue;
      NCPoly nf = R.normal_form(NCPoly::monomial(ring, a * c.words[col]));
      for (const auto& t : nf.terms()) {
        if (!t.coeff.is_rational()) {
          res.detail = "non-rational reduction";
          return res;
        }
        total[t.word] += G[r][col] * t.coeff.rational_part();
      }
    }
  }
  for (const auto& [w, v] : total)
    if (sgn(v) != 0) {
      res.detail = "1 + sum s_j^* s_j leaves the term " + word_to_string(ring->alphabet, w) + " with coefficient " +
                   v.get_str();
      return res;
    }
  res.ok = true;
  res.detail = "normal form of 1 + sum s_j^* s_j is 0 and the weighted terms sum to M";
  return res;
}

}  // namespace ncgame
