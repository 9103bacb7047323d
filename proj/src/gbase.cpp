#include "ncgame/gbase.hpp"

#include <algorithm>
#include <map>
#include <queue>

#include "ncgame/errors.hpp"

namespace ncgame {

std::string to_string(Membership m) {
  switch (m) {
    case Membership::Yes: return "yes";
    case Membership::No: return "no";
    case Membership::Unknown: return "unknown";
  }
  return "?";
}

// ------------------------------------------------------------- derivation

NCPoly expand_steps(const Derivation& d, const std::vector<DerivationStep>& steps, const RingPtr& ring,
                    std::size_t upto) {
  std::vector<Term> acc;
  for (const auto& s : steps) {
    const NCPoly* src = nullptr;
    if (s.source < 0) {
      auto g = static_cast<std::size_t>(-s.source - 1);
      if (g >= d.generators.size()) throw UsageError("derivation cites a missing generator");
      src = &d.generators[g];
    } else {
      auto e = static_cast<std::size_t>(s.source);
      if (e >= upto) throw UsageError("derivation cites a later entry");
      src = &d.entries[e].poly;
    }
    for (const auto& t : src->terms()) acc.push_back(Term{s.left * t.word * s.right, s.coeff * t.coeff});
  }
  return NCPoly(ring, std::move(acc));
}

std::optional<std::size_t> check_derivation(const Derivation& d) {
  for (std::size_t k = 0; k < d.entries.size(); ++k) {
    const auto& e = d.entries[k];
    try {
      if (!(expand_steps(d, e.steps, e.poly.ring(), k) == e.poly)) return k;
    } catch (const UsageError&) {
      return k;
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------- RewriteSystem

RewriteSystem::RewriteSystem(RingPtr ring) : ring_(std::move(ring)) {}

RewriteSystem RewriteSystem::from_rules(RingPtr ring, std::vector<NCPoly> rules, CompletionStatus status,
                                        std::size_t cap) {
  RewriteSystem r(std::move(ring));
  for (auto& p : rules) {
    if (!same_ring(*p.ring(), *r.ring_)) throw UsageError("rule over a different ring");
    if (!p.is_zero()) r.rules_.push_back(p.monic());
  }
  r.status_ = status;
  r.cap_ = cap;
  r.index_rules();
  return r;
}

RewriteSystem RewriteSystem::from_derivation(std::shared_ptr<const Derivation> d, std::vector<std::size_t> rule_entries,
                                             CompletionStatus status, std::size_t cap) {
  if (!d || d->generators.empty()) throw UsageError("derivation without generators");
  RewriteSystem r(d->generators.front().ring());
  for (std::size_t e : rule_entries) {
    if (e >= d->entries.size()) throw UsageError("rule cites a missing derivation entry");
    const NCPoly& p = d->entries[e].poly;
    if (p.is_zero() || !p.leading_coeff().is_one()) throw UsageError("rule is not monic");
    r.rules_.push_back(p);
  }
  r.status_ = status;
  r.cap_ = cap;
  r.derivation_ = std::move(d);
  r.rule_entries_ = std::move(rule_entries);
  r.index_rules();
  return r;
}

void RewriteSystem::index_rules() {
  lead_.clear();
  max_lead_ = 0;
  for (std::size_t i = 0; i < rules_.size(); ++i) {
    const Word& w = rules_[i].leading_word();
    lead_.emplace(w, i);  // keeps the lowest index on duplicates
    max_lead_ = std::max(max_lead_, w.size());
  }
}

std::optional<std::pair<std::size_t, std::size_t>> RewriteSystem::find_reducer(const Word& w) const {
  if (lead_.empty()) return std::nullopt;
  Word probe;
  for (std::size_t p = 0; p < w.size(); ++p) {
    std::optional<std::size_t> best;
    const std::size_t maxlen = std::min(max_lead_, w.size() - p);
    for (std::size_t len = (lead_.count(Word{}) ? 0 : 1); len <= maxlen; ++len) {
      probe = w.sub(p, len);
      auto it = lead_.find(probe);
      if (it != lead_.end() && (!best || it->second < *best)) best = it->second;
    }
    if (best) return std::make_pair(p, *best);
  }
  if (w.empty())
    if (auto it = lead_.find(Word{}); it != lead_.end()) return std::make_pair(std::size_t{0}, it->second);
  return std::nullopt;
}

namespace {

struct Descending {
  const MonomialOrder* ord;
  bool operator()(const Word& a, const Word& b) const { return ord->compare(a, b) > 0; }
};

}  // namespace

NCPoly RewriteSystem::normal_form(const NCPoly& p, std::vector<DerivationStep>* trace) const {
  if (!same_ring(*p.ring(), *ring_)) throw UsageError("normal_form: polynomial over a different ring");
  if (rules_.empty() || p.is_zero()) return p;
  std::map<Word, Cyclo, Descending> work(Descending{&ring_->order});
  for (const auto& t : p.terms()) work.emplace(t.word, t.coeff);
  std::vector<Term> out;
  while (!work.empty()) {
    auto it = work.begin();
    auto red = find_reducer(it->first);
    if (!red) {
      out.push_back(Term{it->first, std::move(it->second)});
      work.erase(it);
      continue;
    }
    const auto [pos, idx] = *red;
    const NCPoly& rule = rules_[idx];
    const std::size_t len = rule.leading_word().size();
    Word left = it->first.prefix(pos);
    Word right = it->first.suffix(it->first.size() - pos - len);
    Cyclo c = std::move(it->second);  // rules are monic
    work.erase(it);
    for (std::size_t k = 1; k < rule.terms().size(); ++k) {
      const auto& t = rule.terms()[k];
      Word w = left * t.word * right;
      Cyclo delta = -(c * t.coeff);
      auto [slot, fresh] = work.try_emplace(std::move(w), delta);
      if (!fresh) {
        slot->second += delta;
        if (slot->second.is_zero()) work.erase(slot);
      }
    }
    if (trace) trace->push_back(DerivationStep{std::move(c), std::move(left), static_cast<long>(idx), std::move(right)});
  }
  return NCPoly(p.ring(), std::move(out));
}

// ------------------------------------------------------------ S-polynomials

std::vector<NCPoly> overlaps(const NCPoly& a, const NCPoly& b) {
  if (a.is_zero() || b.is_zero()) throw UsageError("overlaps of a zero polynomial");
  const NCPoly am = a.monic(), bm = b.monic();
  const Word& la = am.leading_word();
  const Word& lb = bm.leading_word();
  const bool self = am == bm;
  std::vector<NCPoly> out;
  // suffix of lx == prefix of ly, length k: S = x*q - p*y
  auto proper = [&](const NCPoly& x, const Word& lx, const NCPoly& y, const Word& ly) {
    for (std::size_t k = 1; k < std::min(lx.size(), ly.size()); ++k) {
      if (!std::equal(lx.end() - k, lx.end(), ly.begin())) continue;
      Word p = lx.prefix(lx.size() - k);
      Word q = ly.suffix(ly.size() - k);
      out.push_back(x.sandwich(Word{}, q) - y.sandwich(p, Word{}));
    }
  };
  // ly occurs inside lx: S = x - u*y*v for every occurrence
  auto contain = [&](const NCPoly& x, const Word& lx, const NCPoly& y, const Word& ly) {
    if (ly.empty()) {
      out.push_back(x - y.sandwich(Word{}, lx));
      return;
    }
    for (auto pos = lx.find(ly); pos; pos = lx.find(ly, *pos + 1))
      out.push_back(x - y.sandwich(lx.prefix(*pos), lx.suffix(lx.size() - *pos - ly.size())));
  };
  proper(am, la, bm, lb);
  if (self) return out;
  proper(bm, lb, am, la);
  if (lb.size() <= la.size()) {
    contain(am, la, bm, lb);
  } else {
    contain(bm, lb, am, la);
  }
  return out;
}

std::vector<NCPoly> left_matches(const NCPoly& a, const NCPoly& b) {
  if (a.is_zero() || b.is_zero()) throw UsageError("left_matches of a zero polynomial");
  const NCPoly am = a.monic(), bm = b.monic();
  const Word& la = am.leading_word();
  const Word& lb = bm.leading_word();
  std::vector<NCPoly> out;
  if (la.size() >= lb.size() && la.ends_with(lb)) {
    out.push_back(am - bm.sandwich(la.prefix(la.size() - lb.size()), Word{}));
  } else if (lb.size() > la.size() && lb.ends_with(la)) {
    out.push_back(bm - am.sandwich(lb.prefix(lb.size() - la.size()), Word{}));
  }
  return out;
}

// --------------------------------------------------------------- completion

class Completion {
 public:
  Completion(RingPtr ring, const CompletionOptions& opts) : ring_(std::move(ring)), opts_(opts) {
    log_ = std::make_shared<Derivation>();
  }

  RewriteSystem run(const std::vector<NCPoly>& gens);

 private:
  enum class Kind { Source, Overlap };
  struct Pending {
    std::size_t degree;
    std::size_t seq;
    Kind kind;
    long source = 0;     // Source: generator (<0) or entry (>=0)
    std::size_t a = 0;   // Overlap: rule ids and overlap length
    std::size_t b = 0;
    std::size_t k = 0;
  };
  struct Later {
    bool operator()(const Pending& x, const Pending& y) const {
      return x.degree != y.degree ? x.degree > y.degree : x.seq > y.seq;
    }
  };
  struct Rule {
    NCPoly poly;
    std::size_t entry;
    bool alive;
  };

  void push(Pending p) {
    p.seq = seq_++;
    if (p.degree > opts_.cap) {
      truncated_ = true;
      return;
    }
    queue_.push(p);
  }
  void process(const Pending& p);
  void add_rule(NCPoly poly, std::vector<DerivationStep> steps);
  void make_pairs(std::size_t id);
  NCPoly reduce(const NCPoly& p, std::vector<DerivationStep>& steps);

  RingPtr ring_;
  CompletionOptions opts_;
  std::shared_ptr<Derivation> log_;
  std::vector<Rule> rules_;
  std::unordered_map<Word, std::size_t, WordHash> lead_;  // alive rules only
  std::size_t max_lead_ = 0;
  std::priority_queue<Pending, std::vector<Pending>, Later> queue_;
  std::size_t seq_ = 0;
  bool truncated_ = false;
  // Alive rules in creation order, rebuilt lazily after the rule set changes.
  RewriteSystem view_{nullptr};
  std::vector<std::size_t> view_ids_;
  bool view_dirty_ = true;
};

NCPoly Completion::reduce(const NCPoly& p, std::vector<DerivationStep>& steps) {
  if (view_dirty_) {
    view_ = RewriteSystem(ring_);
    view_ids_.clear();
    for (std::size_t i = 0; i < rules_.size(); ++i)
      if (rules_[i].alive) {
        view_.rules_.push_back(rules_[i].poly);
        view_ids_.push_back(i);
      }
    view_.index_rules();
    view_dirty_ = false;
  }
  std::vector<DerivationStep> trace;
  NCPoly r = view_.normal_form(p, &trace);
  for (auto& s : trace) {
    s.coeff = -s.coeff;
    s.source = static_cast<long>(rules_[view_ids_[static_cast<std::size_t>(s.source)]].entry);
    steps.push_back(std::move(s));
  }
  return r;
}

void Completion::make_pairs(std::size_t id) {
  const Word& li = rules_[id].poly.leading_word();
  for (std::size_t j = 0; j <= id; ++j) {
    if (!rules_[j].alive) continue;
    const Word& lj = rules_[j].poly.leading_word();
    auto add = [&](std::size_t a, const Word& la, std::size_t b, const Word& lb) {
      for (std::size_t k = 1; k < std::min(la.size(), lb.size()); ++k) {
        if (!std::equal(la.end() - k, la.end(), lb.begin())) continue;
        Pending p{la.size() + lb.size() - k, 0, Kind::Overlap};
        p.a = a;
        p.b = b;
        p.k = k;
        push(p);
      }
    };
    add(id, li, j, lj);
    if (j != id) add(j, lj, id, li);
  }
}

void Completion::add_rule(NCPoly poly, std::vector<DerivationStep> steps) {
  if (!poly.leading_coeff().is_one()) {
    Cyclo inv = poly.leading_coeff().inverse();
    poly *= inv;
    for (auto& s : steps) s.coeff *= inv;
  }
  const std::size_t entry = log_->entries.size();
  log_->entries.push_back(DerivationEntry{poly, std::move(steps)});
  const Word lw = poly.leading_word();
  // Rules whose leading word contains the new one are retired and re-reduced.
  for (std::size_t j = 0; j < rules_.size(); ++j) {
    if (!rules_[j].alive || !rules_[j].poly.leading_word().contains(lw)) continue;
    rules_[j].alive = false;
    lead_.erase(rules_[j].poly.leading_word());
    Pending p{rules_[j].poly.degree(), 0, Kind::Source};
    p.source = static_cast<long>(rules_[j].entry);
    push(p);
  }
  const std::size_t id = rules_.size();
  rules_.push_back(Rule{std::move(poly), entry, true});
  view_dirty_ = true;
  lead_.emplace(lw, id);
  max_lead_ = std::max(max_lead_, lw.size());
  make_pairs(id);
}

void Completion::process(const Pending& p) {
  std::vector<DerivationStep> steps;
  NCPoly s(ring_);
  const Cyclo one = Cyclo::one(*ring_->field);
  if (p.kind == Kind::Source) {
    const NCPoly& src = p.source < 0 ? log_->generators[static_cast<std::size_t>(-p.source - 1)]
                                     : log_->entries[static_cast<std::size_t>(p.source)].poly;
    s = src;
    steps.push_back(DerivationStep{one, Word{}, p.source, Word{}});
  } else {
    const Rule& a = rules_[p.a];
    const Rule& b = rules_[p.b];
    if (!a.alive || !b.alive) return;
    const Word& la = a.poly.leading_word();
    const Word& lb = b.poly.leading_word();
    Word pre = la.prefix(la.size() - p.k);
    Word post = lb.suffix(lb.size() - p.k);
    s = a.poly.sandwich(Word{}, post) - b.poly.sandwich(pre, Word{});
    steps.push_back(DerivationStep{one, Word{}, static_cast<long>(a.entry), post});
    steps.push_back(DerivationStep{-one, pre, static_cast<long>(b.entry), Word{}});
  }
  if (s.is_zero()) return;
  NCPoly r = reduce(s, steps);
  if (r.is_zero()) return;
  add_rule(std::move(r), std::move(steps));
}

RewriteSystem Completion::run(const std::vector<NCPoly>& gens) {
  for (std::size_t g = 0; g < gens.size(); ++g) {
    if (!same_ring(*gens[g].ring(), *ring_)) throw UsageError("complete: generators over different rings");
    log_->generators.push_back(gens[g]);
    if (gens[g].is_zero()) continue;
    Pending p{gens[g].degree(), 0, Kind::Source};
    p.source = -static_cast<long>(g) - 1;
    if (p.degree > opts_.cap) throw UsageError("complete: generator degree exceeds the cap");
    push(p);
  }
  while (!queue_.empty()) {
    Pending p = queue_.top();
    queue_.pop();
    process(p);
    std::size_t alive = lead_.size();
    if (alive > opts_.max_rules) {
      truncated_ = true;
      break;
    }
    if (lead_.count(Word{})) break;  // the unit ideal; nothing else matters
  }
  if (lead_.count(Word{})) {
    // 1 is in the ideal: the basis is {1}.
    for (auto& r : rules_)
      if (r.alive && !r.poly.leading_word().empty()) r.alive = false;
    truncated_ = false;
  }

  if (opts_.interreduce) {
    for (std::size_t i = 0; i < rules_.size(); ++i) {
      if (!rules_[i].alive) continue;
      NCPoly tail = rules_[i].poly - NCPoly::monomial(ring_, rules_[i].poly.leading_word());
      if (tail.is_zero()) continue;
      std::vector<DerivationStep> steps{DerivationStep{Cyclo::one(*ring_->field), Word{},
                                                       static_cast<long>(rules_[i].entry), Word{}}};
      NCPoly reduced_tail = reduce(tail, steps);
      if (reduced_tail == tail) continue;
      NCPoly poly = NCPoly::monomial(ring_, rules_[i].poly.leading_word()) + reduced_tail;
      rules_[i].entry = log_->entries.size();
      log_->entries.push_back(DerivationEntry{poly, std::move(steps)});
      rules_[i].poly = std::move(poly);
      view_dirty_ = true;
    }
  }

  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < rules_.size(); ++i)
    if (rules_[i].alive) order.push_back(i);
  const auto& ord = ring_->order;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return ord.compare(rules_[x].poly.leading_word(), rules_[y].poly.leading_word()) < 0;
  });
  RewriteSystem out(ring_);
  for (std::size_t i : order) {
    out.rules_.push_back(rules_[i].poly);
    out.rule_entries_.push_back(rules_[i].entry);
  }
  out.status_ = truncated_ ? CompletionStatus::Truncated : CompletionStatus::Complete;
  out.cap_ = opts_.cap;
  out.derivation_ = log_;
  out.index_rules();
  return out;
}

RewriteSystem complete(const std::vector<NCPoly>& gens, const CompletionOptions& opts) {
  if (gens.empty()) throw UsageError("complete: need at least one generator to fix the ring");
  Completion c(gens.front().ring(), opts);
  return c.run(gens);
}

RewriteSystem complete(const std::vector<NCPoly>& gens, std::size_t cap) {
  CompletionOptions o;
  o.cap = cap;
  return complete(gens, o);
}

// ------------------------------------------------------------ mixed ideals

RingPtr augmented_ring(const AugmentedInput& inp) { return inp.ring->with_auxiliary(); }

std::vector<NCPoly> augment(const AugmentedInput& inp) {
  for (const auto* list : {&inp.two_sided, &inp.left})
    for (const auto& g : *list) {
      if (!same_ring(*g.ring(), *inp.ring)) throw UsageError("augment: generator over a different ring");
      if (g.ring()->alphabet.auxiliary()) throw UsageError("augment: generators must not mention xi");
    }
  RingPtr ext = augmented_ring(inp);
  const Letter xi = *ext->alphabet.auxiliary();
  std::vector<NCPoly> out;
  for (const auto& g : inp.two_sided) out.push_back(g.embed(ext));
  for (const auto& b : inp.left) out.push_back(b.embed(ext).sandwich(Word{}, Word{xi}));
  return out;
}

Membership member_two_sided(const NCPoly& p, const RewriteSystem& r) {
  if (r.normal_form(p).is_zero()) return Membership::Yes;
  return r.is_complete() ? Membership::No : Membership::Unknown;
}

MixedMembership member_mixed(const NCPoly& p, const AugmentedInput& inp, std::size_t cap) {
  CompletionOptions o;
  o.cap = cap;
  return member_mixed(p, inp, o);
}

MixedMembership member_mixed(const NCPoly& p, const AugmentedInput& inp, const CompletionOptions& opts) {
  if (p.ring()->alphabet.auxiliary()) throw UsageError("member_mixed: p must not mention xi");
  std::vector<NCPoly> gens = augment(inp);
  RingPtr ext = gens.empty() ? augmented_ring(inp) : gens.front().ring();
  const Letter xi = *ext->alphabet.auxiliary();
  NCPoly target = p.embed(ext).sandwich(Word{}, Word{xi});
  RewriteSystem sys = gens.empty() ? RewriteSystem(ext) : complete(gens, opts);
  NCPoly residue = sys.normal_form(target);
  Membership m = residue.is_zero() ? Membership::Yes
                                   : (sys.is_complete() ? Membership::No : Membership::Unknown);
  return MixedMembership{m, std::move(sys), std::move(residue)};
}

}  // namespace ncgame
