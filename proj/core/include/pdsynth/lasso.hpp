// Lasso-shaped runs, Steps positions, and parity / stair-parity evaluation.
#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include <pdsynth/game.hpp>
#include <pdsynth/machine.hpp>

namespace pdsynth
{
  /// Eventually periodic set of positions of the unrolled sequence
  /// prefix · cycle · cycle · ...
  struct StepsSet
  {
    std::vector<std::size_t> prefix_positions;  // absolute, < prefix length
    std::vector<std::size_t> cycle_offsets;     // offsets within one period
    std::size_t prefix_length = 0;
    std::size_t period = 0;

    bool contains(std::size_t n) const;
  };

  /// Positions n with h(m) >= h(n) for every m >= n, where the heights are
  /// `prefix` followed by `cycle` repeated, each repetition shifted by
  /// `delta`.  Throws std::invalid_argument when delta < 0 or the cycle is
  /// empty.
  StepsSet steps_positions(std::span<const int> prefix,
                           std::span<const int> cycle, int delta);

  /// prefix · cycle^ω.  For delta = 0 the configuration after the cycle
  /// equals cycle.front(); for delta > 0 it has the same state and top with
  /// cycle.front()'s stack as an untouched suffix.
  struct LassoRun
  {
    std::vector<Configuration> prefix;
    std::vector<Configuration> cycle;
    int delta = 0;

    std::vector<int> prefix_heights() const;
    std::vector<int> cycle_heights() const;
  };

  /// Parity: minimal priority on the cycle.  Stair: minimal priority on the
  /// cycle positions that belong to Steps.  Even minimum wins for Player0.
  Player evaluate_lasso(const LassoRun& run, const PriorityFunction& col,
                        Condition kind);

  /// Whether configuration `later` repeats `earlier` as a lasso given the
  /// minimal height seen between them (inclusive).  Returns the height
  /// increase on success.
  std::optional<int> lasso_repeat(const Configuration& earlier,
                                  const Configuration& later,
                                  std::size_t min_height_between);

  /// Acceptance of u·v^ω by a deterministic machine, decided by running it
  /// until a pumping lasso is found.  Returns nullopt if `max_steps` is
  /// exhausted first.  Blocking runs and runs that stop reading input
  /// reject.
  std::optional<bool> accepts_ultimately_periodic(
    const PushdownMachine& m, const PriorityFunction& col, Condition kind,
    std::span<const Letter> u, std::span<const Letter> v,
    std::size_t max_steps = 20000);
}
