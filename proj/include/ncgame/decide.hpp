#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ncgame/gamealg.hpp"
#include "ncgame/gbase.hpp"
#include "ncgame/gns.hpp"
#include "ncgame/soscert.hpp"

namespace ncgame {

enum class Outcome { Perfect, NoPerfect, Unknown };

std::string to_string(Outcome o);
/// 0 Perfect, 1 NoPerfect, 2 Unknown.
int exit_code(Outcome o);

/// Why a toric clause alone rules out perfection: beta * g - 1 with |beta| != 1.
struct NormObstruction {
  std::size_t clause;
  Cyclo norm_squared;
};

/// A product of clauses (or their inverses) equal to a scalar phase != 1.
struct PhaseObstruction {
  std::vector<std::pair<std::size_t, bool>> factors;  // (clause, inverted), leftmost first
  Cyclo phase;
};

struct DecideOptions {
  std::size_t cap = 6;
  std::size_t max_dim = 4096;
  std::size_t subgroup_len = 8;
  std::size_t classical_limit = 1u << 16;  // assignments tried by the 1-dim search
};

struct Verdict {
  Outcome outcome = Outcome::Unknown;
  std::size_t cap = 0;
  std::string reason;
  std::vector<std::string> notes;
  /// Completion of the augmented input; the NoPerfect certificate when xi is a member.
  std::optional<RewriteSystem> system;
  std::optional<NormObstruction> norm;
  std::optional<PhaseObstruction> phase;
  /// Verified finite witness, present for Perfect unless `abstract_witness`.
  std::optional<Strategy> witness;
  bool abstract_witness = false;
};

Verdict decide(const DeterminingSet& d, const DecideOptions& opts = {});

struct SubgroupQuery {
  std::vector<ToricClause> clauses;
  const RewriteSystem* universal = nullptr;  // complete system of the universal relations
};

/// Breadth-first search over products of up to `max_len` clauses h = beta*g
/// and inverses; each product is reduced to (phase, normal word).
std::optional<PhaseObstruction> subgroup_check(const SubgroupQuery& q, std::size_t max_len = 8);

/// Exhaustive search for a one-dimensional strategy (every letter a scalar of
/// its dialect). Returns nullopt when none exists or the search is too large.
std::optional<Strategy> classical_witness(const DeterminingSet& d, std::size_t limit = 1u << 16);

struct SosAttempt {
  Outcome outcome = Outcome::Unknown;  // NoPerfect only with a verified certificate
  std::shared_ptr<const RewriteSystem> system;
  std::size_t words = 0;        // |W_d|
  std::size_t constraints = 0;  // rows of the Gram problem
  SdpResult sdp;
  std::optional<RationalCertificate> certificate;
  std::vector<std::string> log;
};

struct SosOptions {
  std::size_t degree = 2;
  std::size_t cap = 4;
  SdpOptions sdp;
  std::vector<long> schedule = default_denominator_schedule();
};

/// Searches for 1 + sum s_j^* s_j in the two-sided ideal; never claims Perfect.
SosAttempt decide_synchronous_nocolor(const std::vector<NCPoly>& ideal, const SosOptions& opts = {});

}  // namespace ncgame
