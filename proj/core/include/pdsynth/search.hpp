// Enumeration of regular strategy trees and the game solver built on it.
#pragma once

#include <chrono>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <pdsynth/automaton.hpp>
#include <pdsynth/candidate.hpp>
#include <pdsynth/game.hpp>
#include <pdsynth/normalize.hpp>

namespace pdsynth
{
  struct SearchCaps
  {
    /// Class limit for stack alphabets with two or more symbols.
    std::size_t max_classes = 6;
    /// Lasso limits for a singleton stack alphabet.
    std::size_t max_prefix = 8;
    std::size_t max_period = 8;
    /// Discard partial candidates that already fail the trace check.
    bool prune = true;
    /// Upper bound on search steps across both players; 0 is unbounded.
    std::size_t max_steps = 0;
  };

  struct SearchStats
  {
    std::size_t steps = 0;
    std::size_t candidates = 0;
    std::size_t pruned = 0;
    std::size_t level = 0;
  };

  /// Lazy depth-first enumeration of candidates over a normal-form game,
  /// by increasing class count.  Only pairs (class, state) reachable from
  /// the root entry receive strategy entries; each Player0 pair gets one
  /// atom.  Classes outside the used part are completed by inert classes
  /// that carry only the verification branch and are not counted.
  class CandidateEnumerator
  {
  public:
    CandidateEnumerator(const TreeAutomaton& a, SearchCaps caps);
    ~CandidateEnumerator();
    CandidateEnumerator(CandidateEnumerator&&) noexcept;
    CandidateEnumerator& operator=(CandidateEnumerator&&) noexcept;

    enum class Step { working, found, exhausted };

    /// One unit of search work.
    Step step();
    /// The candidate of the last `found` step, annotated.
    const RegularCandidate& current() const;
    /// Runs until the next candidate; nullopt once exhausted.
    std::optional<RegularCandidate> next();

    const SearchStats& stats() const;
    std::size_t max_level() const;

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
  };

  enum class SolveStatus { solved_player0, solved_player1, unknown_at_cap };

  std::string to_string(SolveStatus s);

  struct SolveResult
  {
    SolveStatus status = SolveStatus::unknown_at_cap;
    std::optional<Player> winner;
    /// Witness over `witness_game` (the normalized game, or its role swap
    /// when Player1 wins).
    RegularCandidate witness;
    std::shared_ptr<const NormalizedGame> normalized;
    GameSpec witness_game;
    TreeAutomaton automaton;
    SearchCaps caps;
    SearchStats stats0;
    SearchStats stats1;
    double seconds = 0;
    std::string message;
  };

  /// Solves a deterministic game.  Throws std::invalid_argument on
  /// nondeterministic or malformed input.
  SolveResult solve(const GameSpec& g, SearchCaps caps = {});

  /// Continues a search: `accept` decides whether a checked witness is
  /// taken (used for format-constrained synthesis).
  using WitnessFilter =
    std::function<bool(const SolveResult& partial)>;
  SolveResult solve_filtered(const GameSpec& g, SearchCaps caps,
                             const WitnessFilter& accept);
}
