#pragma once

#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ncgame/decide.hpp"
#include "ncgame/gamealg.hpp"
#include "ncgame/gbase.hpp"
#include "ncgame/gns.hpp"
#include "ncgame/soscert.hpp"

namespace ncgame {

// Plain-text artifact files. Each starts with a "ncgame-<kind> 1" line and
// ends with "end"; lines beginning with '#' are ignored on input.

void write_ring(std::ostream& os, const Ring& r);

/// Basis file: ring, cap, status, the full derivation log, the rules (as
/// derivation entries) and an optional target whose normal form is 0.
void write_basis(std::ostream& os, const RewriteSystem& r, const std::optional<NCPoly>& target = std::nullopt);

struct BasisFile {
  std::shared_ptr<const RewriteSystem> system;
  std::optional<NCPoly> target;
};
BasisFile read_basis(std::istream& is);

/// Strategy witness with the relations and elements it was checked against.
struct StrategyFile {
  Strategy strategy;
  std::vector<NCPoly> relations;
  std::vector<NCPoly> elements;
};
void write_strategy(std::ostream& os, const StrategyFile& w);
StrategyFile read_strategy(std::istream& is);

void write_sos(std::ostream& os, const RationalCertificate& c);
RationalCertificate read_sos(std::istream& is);

/// One clause beta*g with |beta| != 1, plus the relations making g unitary.
struct NormFile {
  RingPtr ring;
  ToricClause clause;
  std::vector<NCPoly> relations;
};
void write_norm(std::ostream& os, const NormFile& n);
NormFile read_norm(std::istream& is);

/// Product of clauses equal to a phase != 1 modulo the universal relations.
struct PhaseFile {
  std::shared_ptr<const RewriteSystem> universal;
  std::vector<ToricClause> clauses;
  PhaseObstruction obstruction;
};
void write_phase(std::ostream& os, const PhaseFile& p);
PhaseFile read_phase(std::istream& is);

enum class ArtifactKind { Basis, Strategy, Sos, Norm, Phase };
std::string to_string(ArtifactKind k);

/// What the artifact must have been produced from: the universal relations
/// and determining elements of a game, or the ideal generators of a
/// coloring problem (in `relations`, with no elements).
struct ArtifactContext {
  RingPtr ring;
  std::vector<NCPoly> relations;
  std::vector<NCPoly> elements;
  std::optional<std::vector<ToricClause>> toric;
  bool mixed = true;  // basis generators are relations + elements*xi
};

struct VerifyResult {
  bool ok = false;
  ArtifactKind kind = ArtifactKind::Basis;
  /// Outcome the artifact proves when ok (a basis without target proves nothing: Unknown).
  Outcome attested = Outcome::Unknown;
  std::vector<std::string> messages;
};

/// Re-checks an artifact using exact reduction only. Throws ParseError on
/// malformed input.
VerifyResult verify_artifact(std::istream& is, const ArtifactContext* ctx = nullptr);

}  // namespace ncgame
