// Seeded generators for property tests, acceptance runs and benchmarks.
#pragma once

#include <cstdint>
#include <optional>
#include <random>

#include <pdsynth/automaton.hpp>
#include <pdsynth/candidate.hpp>
#include <pdsynth/game.hpp>

namespace pdsynth
{
  using Rng = std::mt19937_64;

  struct RandomGameParams
  {
    std::size_t min_states = 2;
    std::size_t max_states = 4;
    std::size_t min_symbols = 1;
    std::size_t max_symbols = 2;
    std::size_t letters = 2;
    int k = 3;
    /// Chance that a (state, top) pair gets a single ε-move.
    double epsilon_chance = 0.15;
    /// Chance that a letter is enabled at a (state, top) pair.
    double letter_chance = 0.7;
    /// Relative weights of push, skip and pop among letter moves.
    double push_weight = 1.0, skip_weight = 2.0, pop_weight = 1.5;
    Condition condition = Condition::parity;
  };

  /// Deterministic game whose rules are single pushes, skips and pops.
  GameSpec random_normal_form_game(Rng& rng, const RandomGameParams& p);

  /// A normal-form game whose reachable configurations stay within
  /// `height_cap`, found by rejection; nullopt after `attempts` tries.
  /// With `min_vertices` > 1 the arena must also have that many reachable
  /// configurations, one of them above the bottom.
  std::optional<GameSpec> random_closed_game(Rng& rng,
                                             const RandomGameParams& p,
                                             std::size_t height_cap,
                                             std::size_t attempts = 1000,
                                             std::size_t min_vertices = 1);

  enum class RandomFormat { deterministic, realtime, visibly, one_counter };

  /// Small game of the given format.  Deterministic and realtime games
  /// also use rewrites and two-symbol pushes.
  GameSpec random_game_in_format(Rng& rng, RandomFormat f);

  /// Deterministic parity pushdown automaton (a game with a single owner).
  GameSpec random_dpda(Rng& rng, std::size_t states, std::size_t letters,
                       std::size_t symbols, int k);

  /// Random class automaton over the tree of `a`, with random strategy
  /// entries drawn from the atoms of `a` (verifier targets excluded).
  RegularCandidate random_candidate(Rng& rng, const TreeAutomaton& a,
                                    std::size_t max_classes);
}
