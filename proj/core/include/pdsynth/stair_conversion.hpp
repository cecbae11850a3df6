// Parity DPDA to an equivalent stair-parity DPDA.
//
// The converted machine tracks, for the current stack level, the least
// priority seen since that level was last entered from below, and stores
// the value of the level underneath in each pushed cell.  The priority of
// a converted state is the least priority seen since the last position at
// the same or lower height, so on Steps positions the stair sequence
// folds in every priority of the original run.
#pragma once

#include <pdsynth/game.hpp>
#include <pdsynth/machine.hpp>

namespace pdsynth
{
  struct StairConversion
  {
    PushdownMachine machine;
    PriorityFunction col;
    /// For each converted state: (original state, r, a).
    struct Origin
    {
      StateId state;
      int since_level;  // r: emitted priority
      int level_min;    // a: running minimum of the current level
    };
    std::vector<Origin> origin;
    /// Original symbol of each converted stack symbol (bottom maps to bottom).
    std::vector<Symbol> symbol_origin;

    Configuration encode_initial() const { return machine.initial_configuration(); }
  };

  /// Throws std::invalid_argument on nondeterministic input.  Only states
  /// and symbols reachable through the rule graph are materialized.
  StairConversion dpda_to_stdpda(const PushdownMachine& m,
                                 const PriorityFunction& col);

  /// Same conversion for a game arena: owners follow the original state and
  /// the condition becomes stair.  Rejects stair inputs.
  GameSpec convert_game_to_stair(const GameSpec& g);
}
