// Games over pushdown machines: owner partition, priorities, condition.
#pragma once

#include <string>
#include <vector>

#include <pdsynth/format.hpp>
#include <pdsynth/machine.hpp>

namespace pdsynth
{
  enum class Condition { parity, stair };

  std::string to_string(Condition c);

  struct GameSpec
  {
    std::string name;
    PushdownMachine machine;
    std::vector<Player> owner;
    PriorityFunction col;
    Condition condition = Condition::parity;
    /// Format the arena is declared to have (informational; checked on
    /// load by the CLI).
    FormatDescriptor format;

    Player owner_of(StateId q) const { return owner.at(q); }

    /// Throws std::invalid_argument when owner/col are not total or the
    /// machine is malformed.
    void validate() const;

    bool operator==(const GameSpec&) const = default;
  };

  struct Move
  {
    Letter letter = epsilon;
    std::size_t rule = 0;
    Configuration target;
  };

  /// Exactly the rule-induced successors of `c`, in rule order.
  std::vector<Move> legal_moves(const GameSpec& g, const Configuration& c);

  /// Same arena with owners exchanged and priorities shifted by one, so
  /// that Player0 of the result wins exactly the plays Player1 wins in `g`.
  GameSpec swap_roles(const GameSpec& g);

  /// Winner of a play whose minimal recurring priority is `m`.
  constexpr Player winner_of_priority(int m) noexcept
  {
    return (m % 2 == 0) ? Player::zero : Player::one;
  }
}
