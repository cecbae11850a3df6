// Alternating two-way tree automaton simulating a normal-form game on the
// tree of stack contents.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <pdsynth/game.hpp>

namespace pdsynth
{
  struct Direction
  {
    enum class Kind : std::uint8_t { up, down, stay };
    Kind kind = Kind::stay;
    Symbol symbol = bottom;  // child symbol for `down`

    static Direction up() { return {Kind::up, bottom}; }
    static Direction down(Symbol a) { return {Kind::down, a}; }
    static Direction stay() { return {Kind::stay, bottom}; }

    auto operator<=>(const Direction&) const = default;
  };

  struct Atom
  {
    Letter letter = epsilon;
    Direction dir;
    int target = 0;

    auto operator<=>(const Atom&) const = default;
  };

  /// A pure conjunction or disjunction of atoms.  The empty conjunction is
  /// true and the empty disjunction false.
  struct Formula
  {
    bool conjunctive = true;
    std::vector<Atom> atoms;

    bool is_true() const { return conjunctive && atoms.empty(); }
    bool is_false() const { return !conjunctive && atoms.empty(); }
    /// Whether the set of (direction, target) pairs satisfies the formula.
    bool satisfied_by(const std::vector<std::pair<Direction, int>>& set) const;

    bool operator==(const Formula&) const = default;
  };

  class TreeAutomaton
  {
  public:
    std::size_t game_states = 0;
    std::size_t gamma = 0;  // |Γ|; node labels are 0 (⊥) .. gamma
    std::vector<std::string> names;
    /// delta[q][label]
    std::vector<std::vector<Formula>> delta;
    std::vector<int> col;
    int k = 1;
    Condition kind = Condition::parity;

    std::size_t num_states() const { return delta.size(); }
    /// Verification state q̄_A for A in 1..gamma.
    int verifier(Symbol a) const { return static_cast<int>(game_states) + a - 1; }
    int initial() const { return static_cast<int>(game_states + gamma); }
    bool is_verifier(int q) const
    {
      return q >= static_cast<int>(game_states) && q < initial();
    }
    const Formula& at(int q, Symbol label) const { return delta.at(q).at(label); }
  };

  /// Throws std::invalid_argument when the machine is not in normal form.
  TreeAutomaton build_automaton(const GameSpec& normalized);

  std::string to_string(const TreeAutomaton& a, const Atom& atom,
                        const PushdownMachine& m);
}
