#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ncgame/freealg.hpp"

namespace ncgame {

struct GameShape {
  int players = 1;    // k
  int questions = 1;  // n
  int answers = 2;    // m

  friend bool operator==(const GameShape&, const GameShape&) = default;
};

enum class Dialect { Projector, Signature, CyclicUnitary };

std::string to_string(Dialect d);
Dialect parse_dialect(std::string_view s);

/// Free *-algebra on the game generators together with the universal game
/// ideal generators (the relations every strategy satisfies).
struct UniversalAlgebra {
  GameShape shape;
  Dialect dialect = Dialect::Projector;
  RingPtr ring;
  std::vector<NCPoly> relations;

  /// Generator for (player, question[, answer]); answer is ignored by the
  /// one-letter-per-question dialects.
  Letter generator(int player, int question, int answer = 0) const;
};

/// Coefficient field order used for a dialect: lcm(m, 4) for cyclic
/// unitaries, 4 otherwise.
int field_order_for(Dialect d, const GameShape& shape);

UniversalAlgebra universal_relations(const GameShape& shape, Dialect dialect);

/// A clause beta*g of a torically determined game.
struct ToricClause {
  Cyclo beta;
  Word word;
};

struct DeterminingSet {
  UniversalAlgebra algebra;
  std::vector<NCPoly> elements;
  /// Present when elements[i] == beta_i g_i - 1 for every i.
  std::optional<std::vector<ToricClause>> toric;
};

/// Question set Q and per-question valid answer tuples gr(i); br(i) is the
/// complement in [m]^k.
struct GameTable {
  GameShape shape;
  std::vector<std::vector<int>> questions;
  std::vector<std::vector<std::vector<int>>> valid;
};

enum class ResponseSet { Valid, Invalid };

/// Throws UsageError when the table is malformed.
void validate(const GameTable& t);
/// All answer tuples for `t` that are not listed as valid for question q.
std::vector<std::vector<int>> invalid_responses(const GameTable& t, std::size_t q);

/// Valid: { sum_{a in gr(i)} prod_alpha e - 1 : i in Q }.
/// Invalid: { prod_alpha e : (i, a) with a in br(i) }. Projector dialect.
DeterminingSet detset_from_table(const GameTable& t, ResponseSet which);

/// (1/|Q|) sum_i sum_{a in gr(i)} prod e; documentation only.
NCPoly game_polynomial(const GameTable& t, const UniversalAlgebra& projector_algebra);

struct XorClause {
  std::vector<int> questions;  // per player; -1 leaves the player out
  int sign = 0;                // s_t in {0, 1}
};

/// { (-1)^s prod_alpha x(alpha)_{i(alpha)} - 1 } in the Signature dialect; needs m == 2.
DeterminingSet encode_xor(const GameShape& shape, const std::vector<XorClause>& clauses);

struct ModrClause {
  std::vector<int> questions;     // j_t(alpha), -1 leaves the player out
  std::vector<int> coefficients;  // d_t(alpha) in [r]
  int rhs = 0;                    // s_t in [r]
};

/// { w^s prod_alpha c(alpha)_{j}^{d} - 1 } with w = exp(-2 pi i / r), cyclic
/// unitaries of order r == m.
DeterminingSet encode_modr(const GameShape& shape, const std::vector<ModrClause>& clauses, int r);

struct LinearEquation {
  std::vector<std::pair<int, int>> terms;  // (variable, coefficient)
  int rhs = 0;
};

struct LinearSystem {
  int modulus = 2;
  int variables = 0;
  std::vector<LinearEquation> equations;
};

/// Two-player linear-systems game: Alice gets an equation, Bob a variable.
/// Alice's alphabet has one letter a{j}_{t} per (equation, variable) pair,
/// commuting within an equation; Bob has b{t}. When `incidence` is given every
/// listed (variable, equation) pair must occur in the system.
DeterminingSet encode_linsys(const LinearSystem& sys,
                             const std::optional<std::vector<std::pair<int, int>>>& incidence = std::nullopt);

struct SynchronousEncoding {
  DeterminingSet two_player;   // symmetrized invalid set sbr over U
  UniversalAlgebra one_player; // U(1)
  std::vector<NCPoly> ideal;   // generators of I(sbr(1)) over U(1)
};

/// Throws UsageError naming (i, a, b) when V(a, b | i, i) != delta_ab or a
/// diagonal question is missing.
SynchronousEncoding encode_synchronous(const GameTable& t);

struct ColoringEncoding {
  UniversalAlgebra algebra;           // U(1) with one question per vertex
  std::vector<NCPoly> edge_relations; // e^u_a e^v_a and e^v_a e^u_a
  std::vector<NCPoly> generators() const;
};

/// Quantum c-coloring relations of a simple graph on `vertices` vertices.
ColoringEncoding encode_coloring(int vertices, const std::vector<std::pair<int, int>>& edges, int colors);

/// The synchronous game table of c-coloring: questions (u, v) for edges in
/// both directions plus every diagonal (v, v).
GameTable coloring_table(int vertices, const std::vector<std::pair<int, int>>& edges, int colors);

/// Change of variables e = (x + 1)/2 (m == 2: e_0 = (1 + x)/2, e_1 = (1 - x)/2).
NCPoly projector_to_signature(const NCPoly& p, const UniversalAlgebra& signature);
/// Change of variables x = 2e - 1 (m == 2: x = 2 e_0 - 1).
NCPoly signature_to_projector(const NCPoly& p, const UniversalAlgebra& projector);

/// Letter-by-letter substitution into another ring.
NCPoly substitute(const NCPoly& p, const RingPtr& target, const std::vector<NCPoly>& images);

}  // namespace ncgame
