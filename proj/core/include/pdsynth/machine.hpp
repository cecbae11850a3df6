// Pushdown machine data model: states, alphabets, rules, configurations.
//
// Stack words are stored bottom-first: index 0 always holds the bottom
// symbol and back() is the top.  Textual renderings print the top first,
// e.g. "A A _".
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace pdsynth
{
  using StateId = int;
  using Letter = int;
  using Symbol = int;

  /// The empty input letter.
  inline constexpr Letter epsilon = -1;
  /// The persistent bottom-of-stack symbol.  Stack symbols 1..n are Γ.
  inline constexpr Symbol bottom = 0;

  enum class Player : std::uint8_t { zero = 0, one = 1 };

  constexpr Player opponent(Player p) noexcept
  {
    return p == Player::zero ? Player::one : Player::zero;
  }

  std::string to_string(Player p);

  /// (from, letter, top) -> (to, write).  `write` replaces the top symbol
  /// and is stored top-first, like the textbook notation δ(q,a,A)=(q',BA).
  struct Rule
  {
    StateId from = 0;
    Letter letter = epsilon;
    Symbol top = bottom;
    StateId to = 0;
    std::vector<Symbol> write;

    bool operator==(const Rule&) const = default;
  };

  /// Shape of a rule relative to the normal form used by the tree automaton.
  enum class RuleShape { push, skip, pop, other };

  RuleShape shape_of(const Rule& r);

  struct Configuration
  {
    StateId state = 0;
    std::vector<Symbol> stack{bottom};  // bottom-first

    std::size_t height() const noexcept { return stack.size(); }
    Symbol top() const noexcept { return stack.back(); }

    bool operator==(const Configuration&) const = default;
    auto operator<=>(const Configuration&) const = default;
  };

  class PushdownMachine
  {
  public:
    std::vector<std::string> states;
    std::vector<std::string> letters;
    /// symbols[0] is the bottom symbol's display name ("_").
    std::vector<std::string> symbols{"_"};
    StateId initial = 0;
    std::vector<Rule> rules;

    std::size_t num_states() const noexcept { return states.size(); }
    std::size_t num_letters() const noexcept { return letters.size(); }
    /// |Γ|, the bottom symbol excluded.
    std::size_t num_stack_symbols() const noexcept
    {
      return symbols.empty() ? 0 : symbols.size() - 1;
    }

    StateId add_state(std::string name);
    Letter add_letter(std::string name);
    Symbol add_symbol(std::string name);
    void add_rule(Rule r);

    std::optional<StateId> find_state(std::string_view name) const;
    std::optional<Letter> find_letter(std::string_view name) const;
    std::optional<Symbol> find_symbol(std::string_view name) const;

    /// Checks the structural invariants (declared ids, bottom persistence).
    /// Throws std::invalid_argument naming the first offending rule.
    void validate() const;

    /// |δ(q,a,A)| + |δ(q,ε,A)| <= 1 for all q, a, A.
    bool is_deterministic() const;

    /// Indices of rules applicable to (state, top), in declaration order.
    std::vector<std::size_t> rules_for(StateId q, Symbol top) const;

    /// Applies rule `r` to `c`; the caller guarantees applicability.
    Configuration apply(const Configuration& c, const Rule& r) const;

    Configuration initial_configuration() const { return {initial, {bottom}}; }

    std::string letter_name(Letter a) const;
    std::string symbol_name(Symbol s) const;
    std::string rule_string(const Rule& r) const;
    std::string config_string(const Configuration& c) const;

    bool operator==(const PushdownMachine&) const = default;
  };

  /// Priority function col : Q -> [k].
  struct PriorityFunction
  {
    std::vector<int> priority;
    int k = 1;

    int operator()(StateId q) const { return priority.at(q); }
    int max_priority() const;
    bool operator==(const PriorityFunction&) const = default;
  };
}
