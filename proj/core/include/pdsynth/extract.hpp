// Strategy extraction from solved regular candidates.
#pragma once

#include <optional>

#include <pdsynth/search.hpp>
#include <pdsynth/strategy.hpp>

namespace pdsynth
{
  /// Strategy on the normalized game: states are game states, the stack
  /// holds classes (the root class is the bottom).  Skip, push and pop
  /// entries become q[p] -> q'[p], q[p] -> q'[p'][p] and q[p] -> q'.
  StrategyPDA extract_general(const SolveResult& r);

  /// Strategy on the original game: every original move becomes a single
  /// transition whose stack effect has the original length, obtained by
  /// following the ε-chains of the normalized game through the class
  /// automaton.  No ε-input rule is added beyond the protagonist's turns
  /// and the game's own ε-moves.
  StrategyPDA extract_realtime(const SolveResult& r);

  /// Moves the current class into the control state so that calls and
  /// internals never read the stack; pushed cells remember the class
  /// below them.  Throws std::invalid_argument when the source's stack
  /// motion is not determined by the letters.
  StrategyPDA extract_visibly(const StrategyPDA& s, const VisiblyAlphabet& v);

  /// Counter strategy from a lasso witness: the position in the lasso is
  /// kept in the control and the counter counts completed loops.
  /// Requires a singleton stack alphabet and a normal-form game.
  StrategyPDA extract_one_counter(const SolveResult& r);

  /// The strategy that plays the original game: extract_general when
  /// normalization changed nothing, extract_realtime otherwise.
  StrategyPDA strategy_for_game(const SolveResult& r);

  /// Extraction targeting a format: blind and one-counter use the counter
  /// construction, visibly the visibly construction (tried with the
  /// counter construction too when a counter is also requested),
  /// realtime the merged construction.  Returns the first candidate
  /// strategy passing the format check.
  std::optional<StrategyPDA> extract_in_format(const SolveResult& r,
                                               const FormatDescriptor& fmt);

  /// Solves the game accepting only witnesses that yield a strategy in
  /// `fmt`.  The strategy is returned through `out` when found.
  SolveResult solve_in_format(const GameSpec& g, SearchCaps caps,
                              const FormatDescriptor& fmt,
                              std::optional<StrategyPDA>* out = nullptr);
}
