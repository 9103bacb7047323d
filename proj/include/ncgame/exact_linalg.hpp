#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "ncgame/cyclo.hpp"

namespace ncgame {

/// Sparse row: (column, value) pairs sorted by column, no zeros.
using SparseRow = std::vector<std::pair<std::size_t, Rational>>;

/// Reduced row echelon form of A x = b: row i has coefficient 1 at
/// pivots[i] and no entries at any other pivot column.
struct EchelonForm {
  std::size_t columns = 0;
  std::vector<std::size_t> pivots;
  std::vector<SparseRow> rows;
  std::vector<Rational> rhs;
  std::vector<std::size_t> source;  // original row each echelon row came from
  bool consistent = true;
  std::optional<std::size_t> inconsistent_row;  // original row reducing to 0 = nonzero

  std::vector<std::size_t> free_columns() const;
  /// Fills the pivot entries of x from its free entries.
  void solve_pivots(std::vector<Rational>& x) const;
};

EchelonForm echelon(std::size_t columns, const std::vector<SparseRow>& rows, const std::vector<Rational>& rhs);

using DenseMatrixQ = std::vector<std::vector<Rational>>;

/// M = L D L^T with L unit lower triangular, no pivoting. For a zero pivot
/// the rest of that column must vanish, which is what PSD requires.
struct LDLT {
  bool psd = false;
  std::size_t failed_at = 0;  // first column violating PSD when !psd
  DenseMatrixQ L;
  std::vector<Rational> D;
};

LDLT ldlt(const DenseMatrixQ& m);

/// Exact L D L^T product.
DenseMatrixQ ldlt_product(const DenseMatrixQ& L, const std::vector<Rational>& D);

/// Best rational approximation with denominator <= bound (continued fractions).
Rational approximate(double x, long bound);

}  // namespace ncgame
