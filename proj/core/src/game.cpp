#include <pdsynth/game.hpp>

#include <stdexcept>

namespace pdsynth
{
  std::string to_string(Condition c)
  {
    return c == Condition::parity ? "parity" : "stair";
  }

  void GameSpec::validate() const
  {
    machine.validate();
    if (owner.size() != machine.num_states())
      throw std::invalid_argument("owner map is not total on states");
    if (col.priority.size() != machine.num_states())
      throw std::invalid_argument("priority function is not total on states");
    for (int p : col.priority)
      if (p < 0 || p >= col.k)
        throw std::invalid_argument("priority " + std::to_string(p)
                                    + " outside [0," + std::to_string(col.k)
                                    + ")");
  }

  std::vector<Move> legal_moves(const GameSpec& g, const Configuration& c)
  {
    std::vector<Move> out;
    for (std::size_t i : g.machine.rules_for(c.state, c.top()))
      {
        const Rule& r = g.machine.rules[i];
        out.push_back({r.letter, i, g.machine.apply(c, r)});
      }
    return out;
  }

  GameSpec swap_roles(const GameSpec& g)
  {
    GameSpec s = g;
    s.name = g.name + "~swapped";
    for (auto& o : s.owner)
      o = opponent(o);
    for (auto& p : s.col.priority)
      ++p;
    s.col.k = g.col.k + 1;
    return s;
  }
}
