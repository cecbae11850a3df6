#include <pdsynth/automaton.hpp>

#include <algorithm>
#include <stdexcept>

#include <pdsynth/normalize.hpp>

namespace pdsynth
{
  bool Formula::satisfied_by(
    const std::vector<std::pair<Direction, int>>& set) const
  {
    auto has = [&](const Atom& a) {
      return std::find(set.begin(), set.end(),
                       std::make_pair(a.dir, a.target))
             != set.end();
    };
    if (conjunctive)
      return std::all_of(atoms.begin(), atoms.end(), has);
    return std::any_of(atoms.begin(), atoms.end(), has);
  }

  TreeAutomaton build_automaton(const GameSpec& g)
  {
    g.validate();
    const PushdownMachine& m = g.machine;
    if (!is_normal_form(m))
      throw std::invalid_argument("tree automaton needs a normal-form game");
    TreeAutomaton a;
    a.game_states = m.num_states();
    a.gamma = m.num_stack_symbols();
    a.k = g.col.k;
    a.kind = g.condition;
    const std::size_t labels = a.gamma + 1;
    const std::size_t n = a.game_states + a.gamma + 1;
    a.delta.assign(n, std::vector<Formula>(labels));
    a.names = m.states;
    a.col = g.col.priority;
    for (Symbol s = 1; s <= static_cast<Symbol>(a.gamma); ++s)
      {
        a.names.push_back("~" + m.symbols[s]);
        a.col.push_back(0);
      }
    a.names.push_back("~in");
    a.col.push_back(0);

    for (std::size_t q = 0; q < a.game_states; ++q)
      for (std::size_t x = 0; x < labels; ++x)
        a.delta[q][x].conjunctive =
          g.owner_of(static_cast<StateId>(q)) == Player::one;
    for (const Rule& r : m.rules)
      {
        Direction d;
        switch (shape_of(r))
          {
          case RuleShape::push:
            d = Direction::down(r.write.front());
            break;
          case RuleShape::skip:
            d = Direction::stay();
            break;
          case RuleShape::pop:
            d = Direction::up();
            break;
          case RuleShape::other:
            throw std::logic_error("non-normal rule");
          }
        a.delta[r.from][r.top].atoms.push_back({r.letter, d, r.to});
      }

    std::vector<Atom> all_down;
    for (Symbol s = 1; s <= static_cast<Symbol>(a.gamma); ++s)
      all_down.push_back({epsilon, Direction::down(s), a.verifier(s)});
    for (Symbol s = 1; s <= static_cast<Symbol>(a.gamma); ++s)
      for (std::size_t x = 0; x < labels; ++x)
        {
          Formula& f = a.delta[a.verifier(s)][x];
          if (static_cast<Symbol>(x) == s)
            f = {true, all_down};
          else
            f = {false, {}};
        }
    for (std::size_t x = 0; x < labels; ++x)
      {
        Formula& f = a.delta[a.initial()][x];
        if (x == bottom)
          {
            f.conjunctive = true;
            f.atoms.push_back({epsilon, Direction::stay(), m.initial});
            f.atoms.insert(f.atoms.end(), all_down.begin(), all_down.end());
          }
        else
          f = {false, {}};
      }
    return a;
  }

  std::string to_string(const TreeAutomaton& a, const Atom& atom,
                        const PushdownMachine& m)
  {
    std::string d;
    switch (atom.dir.kind)
      {
      case Direction::Kind::up:
        d = "up";
        break;
      case Direction::Kind::stay:
        d = "N";
        break;
      case Direction::Kind::down:
        d = "down " + m.symbol_name(atom.dir.symbol);
        break;
      }
    return "(" + m.letter_name(atom.letter) + ", " + d + ", "
           + a.names.at(atom.target) + ")";
  }
}
