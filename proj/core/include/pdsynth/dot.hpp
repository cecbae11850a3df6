// Graphviz exports.  Player1 vertices are boxes, Player0 vertices rounded.
#pragma once

#include <string>

#include <pdsynth/automaton.hpp>
#include <pdsynth/candidate.hpp>
#include <pdsynth/game.hpp>
#include <pdsynth/strategy.hpp>

namespace pdsynth
{
  /// One node per configuration of height <= cap (all stack words, not
  /// only reachable ones).  Moves leaving the cap are listed as comments.
  std::string export_dot(const GameSpec& g, std::size_t height_cap);

  /// One node per strategy state; edges labelled "in/out, top/write".
  std::string export_dot(const StrategyPDA& s);

  /// Trace graph of a candidate: one node per (class, state, priority).
  std::string export_dot(const RegularCandidate& c, const TreeAutomaton& a);
}
