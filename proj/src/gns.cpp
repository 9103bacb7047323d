#include "ncgame/gns.hpp"

#include <algorithm>
#include <deque>
#include <optional>
#include <unordered_set>

#include "ncgame/errors.hpp"

namespace ncgame {

namespace {

void add_scaled(SparseVector& acc, const SparseVector& v, const Cyclo& c) {
  for (const auto& [i, x] : v) {
    auto it = acc.find(i);
    if (it == acc.end()) {
      acc.emplace(i, x * c);
    } else {
      it->second += x * c;
      if (it->second.is_zero()) acc.erase(it);
    }
  }
}

}  // namespace

CycloMatrix CycloMatrix::identity(const CycloField& f, std::size_t n) {
  CycloMatrix m(f, n);
  for (std::size_t i = 0; i < n; ++i) m.cols_[i].emplace(i, Cyclo::one(f));
  return m;
}

Cyclo CycloMatrix::entry(std::size_t r, std::size_t c) const {
  const auto& col = cols_.at(c);
  auto it = col.find(r);
  return it == col.end() ? Cyclo::zero(*field_) : it->second;
}

void CycloMatrix::set(std::size_t r, std::size_t c, const Cyclo& v) {
  if (r >= cols_.size()) throw UsageError("matrix row out of range");
  if (v.is_zero()) {
    cols_.at(c).erase(r);
  } else {
    cols_.at(c).insert_or_assign(r, v);
  }
}

SparseVector CycloMatrix::apply(const SparseVector& v) const {
  SparseVector out;
  for (const auto& [c, x] : v) add_scaled(out, cols_.at(c), x);
  return out;
}

CycloMatrix CycloMatrix::operator*(const CycloMatrix& o) const {
  if (o.dimension() != dimension()) throw UsageError("matrix dimension mismatch");
  CycloMatrix out(*field_, dimension());
  for (std::size_t c = 0; c < dimension(); ++c) out.cols_[c] = apply(o.cols_[c]);
  return out;
}

CycloMatrix CycloMatrix::conjugate_transpose() const {
  CycloMatrix out(*field_, dimension());
  for (std::size_t c = 0; c < dimension(); ++c)
    for (const auto& [r, x] : cols_[c]) out.cols_[r].emplace(c, x.conj());
  return out;
}

bool operator==(const CycloMatrix& a, const CycloMatrix& b) {
  if (a.dimension() != b.dimension()) return false;
  for (std::size_t c = 0; c < a.dimension(); ++c) {
    if (a.cols_[c].size() != b.cols_[c].size()) return false;
    for (const auto& [r, x] : a.cols_[c]) {
      auto it = b.cols_[c].find(r);
      if (it == b.cols_[c].end() || !(it->second == x)) return false;
    }
  }
  return true;
}

// ------------------------------------------------------------------ build

QuotientBuild build_quotient(const RewriteSystem& r, std::size_t max_dim) {
  if (!r.is_complete()) throw UsageError("quotient construction needs a complete rewriting system");
  const auto aux = r.ring()->alphabet.auxiliary();
  if (!aux) throw UsageError("quotient construction needs a ring with the auxiliary letter");
  QuotientBuild out;
  out.module.ring = r.ring();
  const Word xi{*aux};
  if (!r.is_normal(xi)) return out;

  std::unordered_set<Word, WordHash> seen{xi};
  std::deque<Word> frontier{xi};
  std::vector<Word> basis{xi};
  const std::size_t letters = r.ring()->alphabet.size();
  while (!frontier.empty()) {
    Word w = std::move(frontier.front());
    frontier.pop_front();
    for (std::size_t g = 0; g < letters; ++g) {
      if (g == *aux) continue;
      Word gw = Word{static_cast<Letter>(g)} * w;
      // subwords of normal words are normal, so only the new prefix can match
      if (!r.is_normal(gw) || !seen.insert(gw).second) continue;
      if (basis.size() >= max_dim) {
        out.status = BuildStatus::TooLarge;
        return out;
      }
      basis.push_back(gw);
      frontier.push_back(std::move(gw));
    }
  }
  const auto& ord = r.ring()->order;
  std::sort(basis.begin(), basis.end(), [&](const Word& a, const Word& b) { return ord.less(a, b); });
  out.status = BuildStatus::Finite;
  out.module.basis = std::move(basis);
  return out;
}

const CycloMatrix& Strategy::matrix(std::string_view name) const {
  return matrices.at(ring->alphabet.index(name));
}

Strategy gns_matrices(const QuotientModule& v, const RewriteSystem& r) {
  Strategy s;
  s.ring = v.ring;
  s.basis = v.basis;
  const auto& f = *v.ring->field;
  const std::size_t n = v.dimension();
  std::unordered_map<Word, std::size_t, WordHash> pos;
  for (std::size_t i = 0; i < n; ++i) pos.emplace(v.basis[i], i);
  const auto aux = v.ring->alphabet.auxiliary();
  for (std::size_t g = 0; g < v.ring->alphabet.size(); ++g) {
    CycloMatrix m(f, n);
    if (aux && g == *aux) {
      s.matrices.push_back(std::move(m));
      continue;
    }
    for (std::size_t c = 0; c < n; ++c) {
      NCPoly img = r.normal_form(NCPoly::monomial(v.ring, Word{static_cast<Letter>(g)} * v.basis[c]));
      for (const auto& t : img.terms()) {
        auto it = pos.find(t.word);
        if (it == pos.end()) throw UsageError("quotient basis is not closed under left multiplication");
        m.set(it->second, c, t.coeff);
      }
    }
    s.matrices.push_back(std::move(m));
  }
  if (n > 0) s.state.emplace(0, Cyclo::one(f));
  return s;
}

// ------------------------------------------------------------------ verify

SparseVector apply_poly(const Strategy& s, const NCPoly& p, const SparseVector& v) {
  const auto& vars = p.ring()->alphabet.variables();
  std::vector<std::optional<std::size_t>> map(vars.size());
  auto matrix_of = [&](Letter l) -> const CycloMatrix& {
    if (!map[l]) {
      auto m = s.ring->alphabet.find(vars[l].name);
      if (!m || vars[l].auxiliary) throw UsageError("strategy has no matrix for letter " + vars[l].name);
      map[l] = *m;
    }
    return s.matrices.at(*map[l]);
  };
  SparseVector out;
  for (const auto& t : p.terms()) {
    SparseVector w = v;
    for (auto it = t.word.letters().rbegin(); it != t.word.letters().rend() && !w.empty(); ++it)
      w = matrix_of(*it).apply(w);
    add_scaled(out, w, t.coeff);
  }
  return out;
}

StrategyReport verify_strategy(const Strategy& s, const std::vector<NCPoly>& relations,
                               const std::vector<NCPoly>& elements) {
  StrategyReport rep;
  const std::size_t n = s.dimension();
  auto fail = [&](std::string msg) {
    rep.pass = false;
    rep.failures.push_back(std::move(msg));
  };
  if (n == 0) {
    fail("strategy is zero-dimensional");
    return rep;
  }
  if (s.state.empty()) fail("state vector is zero");
  const auto& f = *s.ring->field;
  try {
    for (const auto& rel : relations) {
      for (std::size_t c = 0; c < n; ++c) {
        if (!apply_poly(s, rel, SparseVector{{c, Cyclo::one(f)}}).empty()) {
          fail("relation does not hold: " + rel.to_string());
          break;
        }
      }
    }
    for (const auto& e : elements)
      if (!apply_poly(s, e, s.state).empty()) fail("element does not annihilate the state: " + e.to_string());
  } catch (const UsageError& ex) {
    fail(ex.what());
    return rep;
  }
  const auto& vars = s.ring->alphabet.variables();
  for (std::size_t g = 0; g < vars.size(); ++g) {
    if (vars[g].auxiliary) continue;
    const auto& m = s.matrices[g];
    if (vars[g].adjoint == AdjointRule::SelfAdjoint) {
      if (!(m.conjugate_transpose() == m)) rep.warnings.push_back("matrix of " + vars[g].name + " is not Hermitian");
    } else if (!(m.conjugate_transpose() * m == CycloMatrix::identity(f, n))) {
      rep.warnings.push_back("matrix of " + vars[g].name + " is not unitary");
    }
  }
  return rep;
}

StrategyReport verify_strategy(const Strategy& s, const DeterminingSet& d) {
  return verify_strategy(s, d.algebra.relations, d.elements);
}

}  // namespace ncgame
