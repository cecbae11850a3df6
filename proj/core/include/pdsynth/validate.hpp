// Checking a strategy against its game: product construction and bounded
// exhaustive exploration of the adversary's choices.
#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include <pdsynth/game.hpp>
#include <pdsynth/simulate.hpp>
#include <pdsynth/strategy.hpp>

namespace pdsynth
{
  /// One-player game on paired states and paired stack cells in which only
  /// the adversary chooses.  Player0 of the result wins exactly when the
  /// strategy wins.  Positions where the strategy has no answer lead to a
  /// sink of priority 1.  Throws std::invalid_argument when the stacks of
  /// strategy and game do not move in lock step.
  GameSpec compose_product(const StrategyPDA& s, const GameSpec& g);

  struct ValidationBounds
  {
    std::size_t depth = 24;
    std::size_t height = 12;
  };

  struct ValidationReport
  {
    bool clean = true;
    std::optional<PlayRecord> counterexample;
    std::size_t leaves = 0;
    std::size_t lassos = 0;
    /// Branches cut by the bounds without a verdict.
    std::size_t unresolved = 0;
    std::string summary() const;
  };

  /// Explores every adversary decision up to the bounds.  Repeats of the
  /// joint game/strategy configuration along a branch are evaluated as
  /// lassos; the first losing lasso or dead end is the counterexample.
  ValidationReport validate_strategy(const StrategyPDA& s, const GameSpec& g,
                                     ValidationBounds bounds = {});
}
