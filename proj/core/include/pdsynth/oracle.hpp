// Explicit finite arenas of bounded-stack games and Zielonka's algorithm.
#pragma once

#include <cstddef>
#include <vector>

#include <pdsynth/game.hpp>

namespace pdsynth
{
  struct FiniteArena
  {
    std::vector<Configuration> vertices;
    std::vector<Player> owner;
    std::vector<int> priority;
    std::vector<std::vector<int>> edges;
    int initial = 0;
  };

  /// Configurations reachable from the initial one.  Positions without
  /// moves lead to a sink won by the other player.  Throws
  /// std::runtime_error("arena not closed under cap") when a reachable
  /// configuration is higher than `height_cap`.
  FiniteArena build_arena(const GameSpec& g, std::size_t height_cap);

  /// Winner of every vertex under the min-parity condition.
  std::vector<Player> zielonka(const FiniteArena& arena);

  /// Winner from the initial configuration.  Stair games are rejected
  /// with std::invalid_argument.
  Player finite_arena_oracle(const GameSpec& g, std::size_t height_cap);
}
