#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ncgame/gamealg.hpp"
#include "ncgame/gbase.hpp"

namespace ncgame {

using SparseVector = std::map<std::size_t, Cyclo>;

/// Square matrix over a cyclotomic field stored by columns.
class CycloMatrix {
 public:
  CycloMatrix() = default;
  CycloMatrix(const CycloField& f, std::size_t n) : field_(&f), cols_(n) {}
  static CycloMatrix identity(const CycloField& f, std::size_t n);

  std::size_t dimension() const noexcept { return cols_.size(); }
  const CycloField& field() const { return *field_; }
  const SparseVector& column(std::size_t c) const { return cols_.at(c); }
  Cyclo entry(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, const Cyclo& v);

  SparseVector apply(const SparseVector& v) const;
  CycloMatrix operator*(const CycloMatrix& o) const;
  CycloMatrix conjugate_transpose() const;
  friend bool operator==(const CycloMatrix& a, const CycloMatrix& b);

 private:
  const CycloField* field_ = nullptr;
  std::vector<SparseVector> cols_;
};

/// Span of the normal words u*xi, listed xi first then ascending.
struct QuotientModule {
  RingPtr ring;  // the xi-extended ring
  std::vector<Word> basis;
  std::size_t dimension() const noexcept { return basis.size(); }
};

enum class BuildStatus { Finite, Zero, TooLarge };

struct QuotientBuild {
  BuildStatus status = BuildStatus::Zero;
  QuotientModule module;
};

/// Closure of xi under left multiplication by the non-auxiliary letters.
/// Throws UsageError for a truncated system or a ring without xi.
QuotientBuild build_quotient(const RewriteSystem& r, std::size_t max_dim = 4096);

/// Finite-dimensional assignment of matrices to letters plus a state vector.
struct Strategy {
  RingPtr ring;                      // letters the matrices are indexed by (xi, if present, has none)
  std::vector<Word> basis;           // labels of the basis vectors; may be empty
  std::vector<CycloMatrix> matrices; // one per non-auxiliary letter, in letter order
  SparseVector state;
  std::size_t dimension() const { return matrices.empty() ? 0 : matrices.front().dimension(); }
  const CycloMatrix& matrix(std::string_view name) const;
};

/// Entry (r, c) of letter g is the coefficient of basis r in NF(g * basis c);
/// the state is the indicator of xi.
Strategy gns_matrices(const QuotientModule& v, const RewriteSystem& r);

/// p evaluated on the strategy's matrices (letters matched by name) applied to v.
SparseVector apply_poly(const Strategy& s, const NCPoly& p, const SparseVector& v);

struct StrategyReport {
  bool pass = true;
  std::vector<std::string> failures;
  std::vector<std::string> warnings;
};

/// Exact checks: every relation is a matrix identity, every element
/// annihilates the state, and (warnings only) self-adjoint letters map to
/// Hermitian matrices and unitary letters to unitary matrices.
StrategyReport verify_strategy(const Strategy& s, const std::vector<NCPoly>& relations,
                               const std::vector<NCPoly>& elements);
StrategyReport verify_strategy(const Strategy& s, const DeterminingSet& d);

}  // namespace ncgame
