#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ncgame/freealg.hpp"

namespace ncgame {

enum class Membership { Yes, No, Unknown };
enum class CompletionStatus { Complete, Truncated };

std::string to_string(Membership m);

/// One summand `coeff * left * source * right` of an ideal-membership proof.
/// `source` >= 0 names an earlier derivation entry; `source` < 0 names input
/// generator number (-source - 1).
struct DerivationStep {
  Cyclo coeff;
  Word left;
  long source;
  Word right;
};

/// A polynomial together with the exact combination of earlier material it equals.
struct DerivationEntry {
  NCPoly poly;
  std::vector<DerivationStep> steps;
};

/// Every polynomial a completion run ever created, each justified from the
/// input generators and earlier entries. Checking it needs only polynomial
/// arithmetic, which is what makes the exported basis a certificate.
struct Derivation {
  std::vector<NCPoly> generators;
  std::vector<DerivationEntry> entries;
};

/// Sum of the steps of `entry`; throws UsageError on a dangling reference.
NCPoly expand_steps(const Derivation& d, const std::vector<DerivationStep>& steps, const RingPtr& ring,
                    std::size_t upto);

/// Re-checks every entry of `d` (entry k may only cite entries < k). Returns
/// the index of the first bad entry, or nullopt when all entries check out.
std::optional<std::size_t> check_derivation(const Derivation& d);

/// A list of monic rules over a fixed ring and order; LT(rule) -> rest.
class RewriteSystem {
 public:
  explicit RewriteSystem(RingPtr ring);
  /// Builds a system from explicit rules (made monic, zero rules dropped).
  static RewriteSystem from_rules(RingPtr ring, std::vector<NCPoly> rules,
                                  CompletionStatus status = CompletionStatus::Complete, std::size_t cap = 0);

  /// Rebuilds a system whose rule i is entry rule_entries[i] of `d`.
  static RewriteSystem from_derivation(std::shared_ptr<const Derivation> d, std::vector<std::size_t> rule_entries,
                                       CompletionStatus status, std::size_t cap);

  const RingPtr& ring() const noexcept { return ring_; }
  const std::vector<NCPoly>& rules() const noexcept { return rules_; }
  CompletionStatus status() const noexcept { return status_; }
  bool is_complete() const noexcept { return status_ == CompletionStatus::Complete; }
  std::size_t cap() const noexcept { return cap_; }

  /// Derivation log when the system came out of complete(); null otherwise.
  const std::shared_ptr<const Derivation>& derivation() const noexcept { return derivation_; }
  /// Derivation entry backing rule i (valid when derivation() is set).
  std::size_t rule_entry(std::size_t i) const { return rule_entries_.at(i); }

  /// Reduction with the fixed tie-break: greatest term first, leftmost match,
  /// lowest rule index. When `trace` is given, each subtraction is appended
  /// as a step citing the rule index.
  NCPoly normal_form(const NCPoly& p, std::vector<DerivationStep>* trace = nullptr) const;

  /// Leftmost (position, rule index) whose leading word occurs in w.
  std::optional<std::pair<std::size_t, std::size_t>> find_reducer(const Word& w) const;
  bool is_normal(const Word& w) const { return !find_reducer(w); }

  std::size_t max_lead_length() const noexcept { return max_lead_; }

 private:
  friend class Completion;
  void index_rules();

  RingPtr ring_;
  std::vector<NCPoly> rules_;
  CompletionStatus status_ = CompletionStatus::Complete;
  std::size_t cap_ = 0;
  std::unordered_map<Word, std::size_t, WordHash> lead_;
  std::size_t max_lead_ = 0;
  std::shared_ptr<const Derivation> derivation_;
  std::vector<std::size_t> rule_entries_;
};

/// S-polynomials of proper overlaps (suffix of one leading word equal to a
/// prefix of the other, either way round, self-overlaps included) and of
/// containments (one leading word a subword of the other).
std::vector<NCPoly> overlaps(const NCPoly& a, const NCPoly& b);

/// S-polynomials of left matches: one leading word is a suffix of the other.
std::vector<NCPoly> left_matches(const NCPoly& a, const NCPoly& b);

struct CompletionOptions {
  std::size_t cap = 6;
  std::size_t max_rules = 200000;
  bool interreduce = true;
};

/// Mora-style completion of the two-sided ideal generated by `gens`.
/// Pending work is processed in (degree, creation index) order; overlaps
/// whose common word is longer than the cap mark the result truncated.
RewriteSystem complete(const std::vector<NCPoly>& gens, const CompletionOptions& opts = {});
RewriteSystem complete(const std::vector<NCPoly>& gens, std::size_t cap);

/// Two-sided generators plus left-ideal generators over a ring without xi.
struct AugmentedInput {
  RingPtr ring;
  std::vector<NCPoly> two_sided;
  std::vector<NCPoly> left;
};

/// two_sided u { b*xi : b in left } over ring->with_auxiliary().
std::vector<NCPoly> augment(const AugmentedInput& inp);
/// The xi-extended ring of `inp`.
RingPtr augmented_ring(const AugmentedInput& inp);

Membership member_two_sided(const NCPoly& p, const RewriteSystem& r);

struct MixedMembership {
  Membership verdict;
  RewriteSystem system;   // completion of augment(inp)
  NCPoly residue;         // normal form of p*xi
};

/// Decides p in (two-sided ideal) + (left ideal) via p*xi against the augmented basis.
MixedMembership member_mixed(const NCPoly& p, const AugmentedInput& inp, std::size_t cap);
MixedMembership member_mixed(const NCPoly& p, const AugmentedInput& inp, const CompletionOptions& opts);

}  // namespace ncgame
