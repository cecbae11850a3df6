// Pushdown strategies: deterministic pushdown transducers that follow a
// game step by step.  On a protagonist turn the transducer takes an
// ε-input rule and emits the letter to play; on an adversary turn it reads
// the adversary's letter and emits nothing.
#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <pdsynth/format.hpp>
#include <pdsynth/machine.hpp>

namespace pdsynth
{
  struct StrategyPDA
  {
    std::string name;
    /// Input letters are the game's letters.  Rule i emits output[i].
    PushdownMachine machine;
    std::vector<Letter> output;
    Player player = Player::zero;
    FormatDescriptor format;

    /// Throws std::invalid_argument unless well formed and deterministic.
    void validate() const;

    /// The machine the game sees: each rule labelled by its input letter,
    /// or by its output letter on protagonist turns.
    PushdownMachine game_facing() const;

    std::string rule_string(std::size_t i) const;
  };

  /// Format predicate on the game-facing machine.
  FormatVerdict check_strategy_format(const StrategyPDA& s,
                                      const FormatDescriptor& fmt);

  class StrategyRunner
  {
  public:
    /// Keeps its own reference-counted copy of `s`.
    explicit StrategyRunner(const StrategyPDA& s);
    explicit StrategyRunner(std::shared_ptr<const StrategyPDA> s);

    const Configuration& configuration() const noexcept { return config_; }
    bool failed() const noexcept { return failed_; }

    /// Protagonist turn: fires the ε-input rule at the current
    /// configuration and returns its output (ε for a game ε-move).
    std::optional<Letter> respond();
    /// Follows an observed move.  Returns false and marks the runner failed
    /// when no rule reads `a`.
    bool feed(Letter a);

  private:
    std::optional<std::size_t> find(Letter a) const;

    std::shared_ptr<const StrategyPDA> s_;
    Configuration config_;
    bool failed_ = false;
  };
}
