#include <pdsynth/stair_conversion.hpp>

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>
#include <tuple>

namespace pdsynth
{
  namespace
  {
    class Converter
    {
    public:
      Converter(const PushdownMachine& m, const PriorityFunction& col,
                StairConversion& out)
        : m_(m), col_(col), out_(out)
      {
        out_.machine.letters = m.letters;
        out_.machine.symbols = {m.symbols.at(bottom)};
        out_.symbol_origin = {bottom};
        out_.col.k = col.k;
      }

      void run()
      {
        int c0 = col_(m_.initial);
        out_.machine.initial = state(m_.initial, c0, c0);
        while (!work_.empty())
          {
            StateKey key = work_.front();
            work_.pop_front();
            expand(key);
          }
      }

    private:
      using StateKey = std::tuple<StateId, int, int>;
      using SymKey = std::pair<Symbol, int>;

      StateId state(StateId q, int r, int a)
      {
        StateKey key{q, r, a};
        if (auto it = states_.find(key); it != states_.end())
          return it->second;
        StateId id = out_.machine.add_state(m_.states.at(q) + "{"
                                            + std::to_string(r) + ","
                                            + std::to_string(a) + "}");
        out_.origin.push_back({q, r, a});
        out_.col.priority.push_back(r);
        states_.emplace(key, id);
        work_.push_back(key);
        return id;
      }

      Symbol symbol(Symbol s, int stored)
      {
        SymKey key{s, stored};
        if (auto it = symbols_.find(key); it != symbols_.end())
          return it->second;
        Symbol id = out_.machine.add_symbol(m_.symbols.at(s) + "."
                                            + std::to_string(stored));
        out_.symbol_origin.push_back(s);
        symbols_.emplace(key, id);
        // Tops newly readable by already expanded states.
        for (const auto& [k, sid] : states_)
          if (expanded_.count(k))
            expand_on(k, id);
        return id;
      }

      void expand(const StateKey& key)
      {
        expanded_.insert(key);
        expand_on(key, bottom);
        std::vector<Symbol> known;
        for (const auto& [k, id] : symbols_)
          known.push_back(id);
        for (Symbol t : known)
          expand_on(key, t);
      }

      void expand_on(const StateKey& key, Symbol encoded_top)
      {
        auto [q, r, a] = key;
        (void)r;
        StateId from = states_.at(key);
        if (!done_.insert({from, encoded_top}).second)
          return;
        Symbol top = out_.symbol_origin.at(encoded_top);
        int stored = 0;
        if (encoded_top != bottom)
          for (const auto& [k, id] : symbols_)
            if (id == encoded_top)
              stored = k.second;
        for (std::size_t i : m_.rules_for(q, top))
          {
            const Rule& rule = m_.rules[i];
            int c = col_(rule.to);
            std::vector<Symbol> write;
            StateId to;
            if (rule.write.empty())
              {
                to = state(rule.to, std::min(a, c),
                           std::min({stored, a, c}));
              }
            else
              {
                // Cells above the preserved position, bottom-up.
                std::size_t base = rule.write.size() - 1;
                to = base == 0 ? state(rule.to, c, std::min(a, c))
                               : state(rule.to, c, c);
                Symbol kept = top == bottom
                                ? bottom
                                : symbol(rule.write.back(), stored);
                std::vector<Symbol> up;
                for (std::size_t j = base; j-- > 0;)
                  up.push_back(symbol(rule.write[j],
                                      j + 1 == base ? std::min(a, c) : c));
                write.assign(up.rbegin(), up.rend());
                write.push_back(kept);
              }
            out_.machine.add_rule({from, rule.letter, encoded_top, to,
                                   std::move(write)});
          }
      }

      const PushdownMachine& m_;
      const PriorityFunction& col_;
      StairConversion& out_;
      std::map<StateKey, StateId> states_;
      std::map<SymKey, Symbol> symbols_;
      std::set<StateKey> expanded_;
      std::set<std::pair<StateId, Symbol>> done_;
      std::deque<StateKey> work_;
    };
  }

  StairConversion dpda_to_stdpda(const PushdownMachine& m,
                                 const PriorityFunction& col)
  {
    m.validate();
    if (!m.is_deterministic())
      throw std::invalid_argument(
        "stair conversion requires a deterministic machine");
    StairConversion out;
    Converter(m, col, out).run();
    return out;
  }

  GameSpec convert_game_to_stair(const GameSpec& g)
  {
    g.validate();
    if (g.condition != Condition::parity)
      throw std::invalid_argument("convert stair: game already uses stair");
    StairConversion conv = dpda_to_stdpda(g.machine, g.col);
    GameSpec out;
    out.name = g.name + "~stair";
    out.machine = std::move(conv.machine);
    out.col = conv.col;
    for (const auto& o : conv.origin)
      out.owner.push_back(g.owner_of(o.state));
    out.condition = Condition::stair;
    out.format = g.format;
    out.format.one_counter = false;
    out.format.blind = false;
    return out;
  }
}
