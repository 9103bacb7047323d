#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ncgame/exact_linalg.hpp"
#include "ncgame/gbase.hpp"

namespace ncgame {

/// Linear constraints on a real symmetric M for NF(1 + W^* M W) = 0.
/// Variable k stands for M(r, c), r <= c, enumerated row by row.
struct GramProblem {
  std::shared_ptr<const RewriteSystem> system;
  std::size_t degree = 0;
  std::vector<Word> words;             // W_d: normal words of degree <= d, ascending
  std::vector<Word> constraint_words;  // one per constraint row; the empty word first
  std::vector<SparseRow> rows;
  std::vector<Rational> rhs;           // -1 for the empty word, 0 otherwise

  std::size_t size() const noexcept { return words.size(); }
  std::size_t variables() const noexcept { return words.size() * (words.size() + 1) / 2; }
  std::size_t variable(std::size_t r, std::size_t c) const;
};

/// Normal words of degree <= d.
std::vector<Word> normal_words(const RewriteSystem& r, std::size_t d);

/// Throws UsageError when some reduced product has a non-rational coefficient.
GramProblem gram_setup(std::shared_ptr<const RewriteSystem> r, std::size_t d);

enum class SdpStatus { Feasible, Infeasible, Undetermined };

std::string to_string(SdpStatus s);

struct SdpOptions {
  double tol = 1e-9;
  std::size_t max_sweeps = 50000;
  double margin = 1e-3;  // eigenvalue floor of the PSD target set
};

struct SdpResult {
  SdpStatus status = SdpStatus::Undetermined;
  Eigen::MatrixXd M;
  double min_eigenvalue = 0;
  double residual = 0;
  std::size_t sweeps = 0;
  std::string evidence;
};

/// Douglas-Rachford splitting between the affine constraint set and
/// {M : M >= margin I}.
SdpResult solve_feasibility(const GramProblem& g, const SdpOptions& opts = {});
/// Same, reusing an echelon form of the constraints.
SdpResult solve_feasibility(const GramProblem& g, const EchelonForm& e, const SdpOptions& opts = {});

/// s_j = sum_r coeffs(r) w_r entering with weight D_j >= 0.
struct SosTerm {
  Rational weight;
  SparseRow coeffs;
};

/// 1 + sum_j D_j s_j^* s_j reduces to 0, and M = sum_j D_j v_j v_j^T.
struct RationalCertificate {
  std::shared_ptr<const RewriteSystem> system;
  std::size_t degree = 0;
  std::vector<Word> words;
  DenseMatrixQ M;
  std::vector<SosTerm> terms;
  long denominator = 0;  // bound that produced M
};

struct RationalizeResult {
  std::optional<RationalCertificate> certificate;
  std::vector<std::string> log;
};

std::vector<long> default_denominator_schedule();

RationalizeResult rationalize_and_verify(const Eigen::MatrixXd& M, const GramProblem& g, const EchelonForm& e,
                                         const std::vector<long>& schedule = default_denominator_schedule());

struct CertificateCheck {
  bool ok = false;
  std::string detail;
};

/// Exact decomposition of a rational PSD matrix into weighted rank-one terms:
/// L D L^T for small matrices, otherwise a rounded Cholesky factor plus a
/// diagonally dominant remainder. nullopt when neither route succeeds.
std::optional<std::vector<SosTerm>> psd_decomposition(const DenseMatrixQ& M);

/// Independent re-check: requires D_j >= 0, sum_j D_j v_j v_j^T == M, and
/// reduces 1 + sum_j D_j s_j^* s_j to 0 under the embedded system.
CertificateCheck check_certificate(const RationalCertificate& c);

}  // namespace ncgame
