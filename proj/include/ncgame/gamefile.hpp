#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ncgame/gamealg.hpp"

namespace ncgame {

enum class GameKind { Xor, Modr, Linsys, Table, Graph };

/// Parsed contents of a game or graph file.
struct GameFile {
  GameKind kind = GameKind::Xor;
  std::optional<GameShape> shape;
  std::vector<XorClause> xor_clauses;
  int modulus = 2;
  std::vector<ModrClause> modr_clauses;
  LinearSystem linsys;
  GameTable table;
  ResponseSet detset = ResponseSet::Invalid;
  int vertices = 0;
  int colors = 0;
  std::vector<std::pair<int, int>> edges;
};

/// Line-oriented format; see README. Throws ParseError with a line number.
GameFile parse_game(std::string_view text);
GameFile read_game_file(const std::filesystem::path& path);

/// Determining set of a non-graph game. `dialect` overrides the natural one
/// (signature for xor, cyclic for modr/linsys, projector for tables); a
/// projector override of a toric game converts via x = 2e - 1.
DeterminingSet determining_set(const GameFile& g, std::optional<Dialect> dialect = std::nullopt);

}  // namespace ncgame
