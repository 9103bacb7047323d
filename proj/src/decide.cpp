#include "ncgame/decide.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>

#include "ncgame/errors.hpp"

namespace ncgame {

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::Perfect: return "Perfect";
    case Outcome::NoPerfect: return "NoPerfect";
    case Outcome::Unknown: return "Unknown";
  }
  return "?";
}

int exit_code(Outcome o) {
  switch (o) {
    case Outcome::Perfect: return 0;
    case Outcome::NoPerfect: return 1;
    case Outcome::Unknown: return 2;
  }
  return 2;
}

// -------------------------------------------------------------- subgroups

std::optional<PhaseObstruction> subgroup_check(const SubgroupQuery& q, std::size_t max_len) {
  if (!q.universal || !q.universal->is_complete())
    throw UsageError("subgroup check needs a complete system for the universal relations");
  const RewriteSystem& R = *q.universal;
  const RingPtr& ring = R.ring();
  const auto& f = *ring->field;

  struct Gen {
    Cyclo beta;
    Word word;
  };
  std::vector<Gen> gens;
  for (const auto& c : q.clauses) {
    if (!c.beta.norm_squared().is_one()) throw UsageError("subgroup check needs unit-modulus clause scalars");
    gens.push_back({c.beta, c.word});
    gens.push_back({c.beta.conj(), adjoint_word(ring->alphabet, c.word)});
  }

  struct Node {
    Word word;
    Cyclo phase;
    long parent;
    std::size_t gen;
  };
  std::vector<Node> nodes{{Word{}, Cyclo::one(f), -1, 0}};
  std::map<std::pair<std::vector<Letter>, std::string>, std::size_t> seen;
  seen.emplace(std::pair{std::vector<Letter>{}, Cyclo::one(f).to_string()}, 0);
  std::vector<std::size_t> level{0};

  auto path = [&](std::size_t idx) {
    PhaseObstruction ob{{}, nodes[idx].phase};
    for (long i = static_cast<long>(idx); nodes[static_cast<std::size_t>(i)].parent >= 0;
         i = nodes[static_cast<std::size_t>(i)].parent) {
      std::size_t g = nodes[static_cast<std::size_t>(i)].gen;
      ob.factors.insert(ob.factors.begin(), {g / 2, g % 2 == 1});
    }
    return ob;
  };

  for (std::size_t len = 1; len <= max_len && !level.empty(); ++len) {
    std::vector<std::size_t> next;
    for (std::size_t idx : level) {
      for (std::size_t g = 0; g < gens.size(); ++g) {
        NCPoly prod = R.normal_form(NCPoly::monomial(ring, nodes[idx].word * gens[g].word));
        if (prod.size() != 1) throw UsageError("universal relations do not reduce products of clauses to single words");
        Cyclo phase = nodes[idx].phase * gens[g].beta * prod.leading_coeff();
        Word w = prod.leading_word();
        auto key = std::pair{w.letters(), phase.to_string()};
        if (seen.count(key)) continue;
        seen.emplace(key, nodes.size());
        nodes.push_back({w, phase, static_cast<long>(idx), g});
        if (w.empty() && !phase.is_one()) return path(nodes.size() - 1);
        next.push_back(nodes.size() - 1);
      }
    }
    level = std::move(next);
  }
  return std::nullopt;
}

// -------------------------------------------------------- classical search

std::optional<Strategy> classical_witness(const DeterminingSet& d, std::size_t limit) {
  const RingPtr& ring = d.algebra.ring;
  const auto& f = *ring->field;
  const auto& vars = ring->alphabet.variables();
  const std::size_t n = vars.size();

  std::vector<std::vector<Cyclo>> cand(n);
  for (std::size_t l = 0; l < n; ++l) {
    const auto& v = vars[l];
    if (v.auxiliary) {
      cand[l] = {Cyclo::one(f)};
    } else if (v.adjoint == AdjointRule::Unitary) {
      if (f.order() % v.unitary_order != 0) return std::nullopt;
      for (int k = 0; k < v.unitary_order; ++k) cand[l].push_back(Cyclo::root(f, k * (f.order() / v.unitary_order)));
    } else if (d.algebra.dialect == Dialect::Projector) {
      cand[l] = {Cyclo::zero(f), Cyclo::one(f)};
    } else {
      cand[l] = {Cyclo::one(f), Cyclo(f, Rational(-1))};
    }
  }

  // each polynomial is checked as soon as its greatest letter is assigned
  std::vector<std::vector<const NCPoly*>> due(n + 1);
  auto schedule = [&](const NCPoly& p) {
    std::size_t top = 0;
    for (const auto& t : p.terms())
      for (Letter l : t.word) top = std::max<std::size_t>(top, l + 1u);
    due[top].push_back(&p);
  };
  for (const auto& p : d.algebra.relations) schedule(p);
  for (const auto& p : d.elements) schedule(p);

  std::vector<Cyclo> value(n, Cyclo::zero(f));
  auto eval = [&](const NCPoly& p) {
    Cyclo s = Cyclo::zero(f);
    for (const auto& t : p.terms()) {
      Cyclo m = t.coeff;
      for (Letter l : t.word) m *= value[l];
      s += m;
    }
    return s;
  };
  for (const NCPoly* p : due[0])
    if (!eval(*p).is_zero()) return std::nullopt;

  std::size_t visited = 0;
  bool aborted = false;
  std::function<bool(std::size_t)> assign = [&](std::size_t l) -> bool {
    if (l == n) return true;
    for (const auto& c : cand[l]) {
      if (++visited > limit) {
        aborted = true;
        return false;
      }
      value[l] = c;
      bool ok = true;
      for (const NCPoly* p : due[l + 1])
        if (!eval(*p).is_zero()) {
          ok = false;
          break;
        }
      if (ok && assign(l + 1)) return true;
      if (aborted) return false;
    }
    return false;
  };
  if (!assign(0)) return std::nullopt;

  Strategy s;
  s.ring = ring;
  for (std::size_t l = 0; l < n; ++l) {
    CycloMatrix m(f, 1);
    m.set(0, 0, value[l]);
    s.matrices.push_back(std::move(m));
  }
  s.state.emplace(0, Cyclo::one(f));
  return s;
}

// ------------------------------------------------------------------ decide

Verdict decide(const DeterminingSet& d, const DecideOptions& opts) {
  Verdict v;
  v.cap = opts.cap;
  const RingPtr& ring = d.algebra.ring;
  const bool toric = d.toric.has_value();

  if (toric) {
    for (std::size_t i = 0; i < d.toric->size(); ++i) {
      Cyclo ns = (*d.toric)[i].beta.norm_squared();
      if (!ns.is_one()) {
        v.outcome = Outcome::NoPerfect;
        v.reason = "clause " + std::to_string(i) + " has a scalar of modulus != 1";
        v.norm = NormObstruction{i, ns};
        return v;
      }
    }
  }

  AugmentedInput in{ring, d.algebra.relations, d.elements};
  CompletionOptions copts;
  copts.cap = opts.cap;
  // the cap never cuts off an input generator
  for (const auto& g : augment(in)) copts.cap = std::max(copts.cap, g.degree());
  if (copts.cap > opts.cap) v.notes.push_back("cap raised to the generator degree " + std::to_string(copts.cap));
  v.cap = copts.cap;
  auto mm = member_mixed(NCPoly::constant(ring, 1), in, copts);
  v.system = mm.system;
  const bool complete = mm.system.is_complete();

  if (mm.verdict == Membership::Yes) {
    v.outcome = Outcome::NoPerfect;
    v.reason = "xi reduces to 0: 1 lies in the universal ideal plus the left ideal of the determining set";
    return v;
  }

  if (complete) {
    auto qb = build_quotient(mm.system, opts.max_dim);
    if (qb.status == BuildStatus::Finite) {
      Strategy s = gns_matrices(qb.module, mm.system);
      auto rep = verify_strategy(s, d);
      if (rep.pass && rep.warnings.empty()) {
        v.outcome = Outcome::Perfect;
        v.reason = "finite quotient of dimension " + std::to_string(s.dimension()) + " with a common kernel vector";
        v.witness = std::move(s);
        return v;
      }
      for (auto& w : rep.failures) v.notes.push_back("quotient strategy: " + w);
      for (auto& w : rep.warnings) v.notes.push_back("quotient strategy: " + w);
    } else if (qb.status == BuildStatus::TooLarge) {
      v.notes.push_back("quotient dimension exceeds " + std::to_string(opts.max_dim));
    }
  } else {
    v.notes.push_back("completion truncated at degree " + std::to_string(copts.cap));
  }

  if (auto s = classical_witness(d, opts.classical_limit)) {
    v.outcome = Outcome::Perfect;
    v.reason = "one-dimensional (classical) strategy";
    v.witness = std::move(*s);
    return v;
  }

  if (toric && complete) {
    v.outcome = Outcome::Perfect;
    v.abstract_witness = true;
    v.reason = "complete basis and xi is not a member (Nullstellensatz); no finite witness attached";
    return v;
  }

  if (toric) {
    auto uni = ncgame::complete(d.algebra.relations, copts);
    if (uni.is_complete()) {
      try {
        if (auto ob = subgroup_check(SubgroupQuery{*d.toric, &uni}, opts.subgroup_len)) {
          v.outcome = Outcome::NoPerfect;
          v.reason = "a product of clauses equals a scalar != 1";
          v.phase = std::move(ob);
          return v;
        }
      } catch (const UsageError& e) {
        v.notes.push_back(std::string("subgroup check skipped: ") + e.what());
      }
    }
  }

  v.outcome = Outcome::Unknown;
  v.reason = complete ? "complete basis without a verified finite witness" : "degree cap reached";
  return v;
}

SosAttempt decide_synchronous_nocolor(const std::vector<NCPoly>& ideal, const SosOptions& opts) {
  SosAttempt a;
  CompletionOptions copts;
  copts.cap = opts.cap;
  a.system = std::make_shared<const RewriteSystem>(ncgame::complete(ideal, copts));
  if (!a.system->is_complete()) a.log.push_back("basis truncated at degree " + std::to_string(opts.cap));
  GramProblem g = gram_setup(a.system, opts.degree);
  a.words = g.size();
  a.constraints = g.rows.size();
  a.log.push_back("|W_" + std::to_string(opts.degree) + "| = " + std::to_string(g.size()) + ", " +
                  std::to_string(g.rows.size()) + " constraints");
  EchelonForm e = echelon(g.variables(), g.rows, g.rhs);
  a.sdp = solve_feasibility(g, e, opts.sdp);
  a.log.push_back("sdp " + to_string(a.sdp.status) + " after " + std::to_string(a.sdp.sweeps) +
                  " sweeps, min eigenvalue " + std::to_string(a.sdp.min_eigenvalue) +
                  (a.sdp.evidence.empty() ? "" : " (" + a.sdp.evidence + ")"));
  if (a.sdp.status != SdpStatus::Feasible) return a;
  auto r = rationalize_and_verify(a.sdp.M, g, e, opts.schedule);
  for (auto& l : r.log) a.log.push_back("rationalize " + l);
  if (r.certificate && check_certificate(*r.certificate).ok) {
    a.certificate = std::move(r.certificate);
    a.outcome = Outcome::NoPerfect;
  }
  return a;
}

}  // namespace ncgame
