#include <pdsynth/fixtures.hpp>

#include <stdexcept>

namespace pdsynth
{
  namespace
  {
    class Builder
    {
    public:
      explicit Builder(std::string name) { g_.name = std::move(name); }

      void states(std::initializer_list<std::pair<const char*, Player>> qs)
      {
        for (auto [n, o] : qs)
          {
            g_.machine.add_state(n);
            g_.owner.push_back(o);
          }
      }
      void letters(std::initializer_list<const char*> ls)
      {
        for (auto l : ls)
          g_.machine.add_letter(l);
      }
      void symbols(std::initializer_list<const char*> ss)
      {
        for (auto s : ss)
          g_.machine.add_symbol(s);
      }
      void colors(std::initializer_list<int> cs, int k)
      {
        g_.col.priority.assign(cs.begin(), cs.end());
        g_.col.k = k;
      }

      // Top "*" expands to the bottom and every stack symbol, in order.
      void rule(const char* from, const char* letter, const char* top,
                const char* to, std::initializer_list<const char*> push,
                bool pop = false)
      {
        std::vector<Symbol> tops;
        if (std::string(top) == "*")
          for (std::size_t s = 0; s < g_.machine.symbols.size(); ++s)
            tops.push_back(static_cast<Symbol>(s));
        else
          tops.push_back(sym(top));
        for (Symbol t : tops)
          {
            std::vector<Symbol> w;
            for (auto p : push)
              w.push_back(sym(p));
            if (!pop)
              w.push_back(t);
            g_.machine.add_rule({*g_.machine.find_state(from),
                                 *g_.machine.find_letter(letter), t,
                                 *g_.machine.find_state(to), std::move(w)});
          }
      }

      GameSpec& game() { return g_; }

    private:
      Symbol sym(const char* s) const
      {
        if (std::string(s) == "_")
          return bottom;
        return *g_.machine.find_symbol(s);
      }
      GameSpec g_;
    };

    constexpr Player P0 = Player::zero;
    constexpr Player P1 = Player::one;
  }

  GameSpec blind_counter_game()
  {
    Builder b("blind-counter");
    b.states({{"q0", P1}, {"q1", P1}, {"q2", P0}, {"q3", P0}, {"q4", P1}});
    b.letters({"a", "b", "c", "d"});
    b.symbols({"A"});
    b.rule("q0", "a", "*", "q0", {"A"});
    b.rule("q0", "b", "A", "q1", {}, true);
    b.rule("q1", "b", "A", "q1", {}, true);
    b.rule("q1", "c", "*", "q2", {});
    b.rule("q2", "a", "*", "q3", {});
    b.rule("q2", "b", "*", "q4", {});
    b.rule("q3", "c", "*", "q4", {"A"});
    b.rule("q4", "c", "*", "q3", {"A"});
    b.rule("q3", "d", "A", "q3", {});
    b.rule("q4", "d", "A", "q4", {});
    b.colors({2, 2, 0, 0, 1}, 3);
    GameSpec& g = b.game();
    g.format.deterministic = true;
    g.format.one_counter = true;
    g.format.blind = true;
    g.validate();
    return g;
  }

  GameSpec visibly_counter_game()
  {
    Builder b("visibly-counter");
    b.states({{"s0", P1}, {"s1", P1}, {"s2", P1}, {"t0", P0}, {"t1", P0},
              {"t2", P0}, {"t3", P0}, {"lose", P1}});
    b.letters({"c", "r", "a"});
    b.symbols({"A"});
    b.rule("s0", "c", "*", "s1", {"A"});
    b.rule("s1", "c", "*", "s2", {"A"});
    b.rule("s2", "c", "*", "s2", {"A"});
    b.rule("s2", "a", "A", "t0", {}, true);
    b.rule("t0", "r", "A", "t0", {}, true);
    b.rule("t0", "r", "_", "lose", {});
    b.rule("t0", "a", "A", "t1", {}, true);
    b.rule("t0", "a", "_", "lose", {});
    b.rule("t1", "r", "_", "t2", {});
    b.rule("t1", "r", "A", "lose", {}, true);
    b.rule("t2", "r", "_", "t3", {});
    b.rule("t3", "a", "_", "t3", {});
    b.rule("lose", "r", "_", "lose", {});
    b.rule("lose", "r", "A", "lose", {}, true);
    b.colors({1, 1, 0, 1, 1, 1, 0, 1}, 2);
    GameSpec& g = b.game();
    g.format.deterministic = true;
    g.format.realtime = true;
    g.format.one_counter = true;
    VisiblyAlphabet v;
    v.calls = {0};
    v.returns = {1, 2};
    g.format.visibly = v;
    g.validate();
    return g;
  }

  GameSpec divergence_game(Condition kind)
  {
    Builder b(kind == Condition::parity ? "divergence" : "divergence-stair");
    b.states({{"q0", P0}, {"q1", P1}});
    b.letters({"a", "b"});
    b.symbols({"A"});
    b.rule("q0", "a", "*", "q1", {"A"});
    b.rule("q1", "b", "A", "q0", {}, true);
    b.colors({2, 1}, 3);
    GameSpec& g = b.game();
    g.condition = kind;
    g.format.deterministic = true;
    g.format.realtime = true;
    g.format.one_counter = true;
    g.validate();
    return g;
  }

  Fixtures fixtures()
  {
    return {blind_counter_game(), visibly_counter_game(), divergence_game(Condition::parity)};
  }
}
