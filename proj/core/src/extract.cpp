#include <pdsynth/extract.hpp>

#include <map>
#include <stdexcept>

namespace pdsynth
{
  namespace
  {
    bool is_game_state(const TreeAutomaton& a, int q)
    {
      return q < static_cast<int>(a.game_states);
    }

    void add_move(StrategyPDA& s, bool protagonist, StateId from, Letter a,
                  Symbol top, StateId to, std::vector<Symbol> write)
    {
      s.machine.add_rule(
        {from, protagonist ? epsilon : a, top, to, std::move(write)});
      s.output.push_back(protagonist ? a : epsilon);
    }

    // Stack symbol of each reachable class; the root is the bottom.
    std::vector<Symbol> class_symbols(const RegularCandidate& c,
                                      PushdownMachine& m)
    {
      auto reach = c.reachable();
      std::vector<Symbol> sym(c.num_classes(), -1);
      for (std::size_t p = 0; p < c.num_classes(); ++p)
        {
          if (static_cast<int>(p) == c.root)
            sym[p] = bottom;
          else if (reach[p])
            sym[p] = m.add_symbol("p" + std::to_string(p));
        }
      return sym;
    }

    StrategyPDA skeleton(const SolveResult& r, const std::string& kind)
    {
      if (!r.winner)
        throw std::invalid_argument("extraction needs a solved result");
      StrategyPDA s;
      s.name = r.witness_game.name + "~" + kind;
      s.player = *r.winner;
      s.machine.letters = r.witness_game.machine.letters;
      s.format.deterministic = true;
      return s;
    }
  }

  StrategyPDA extract_general(const SolveResult& r)
  {
    StrategyPDA s = skeleton(r, "strategy");
    const GameSpec& g = r.witness_game;
    const TreeAutomaton& a = r.automaton;
    const RegularCandidate& c = r.witness;
    s.machine.states = g.machine.states;
    s.machine.initial = g.machine.initial;
    auto sym = class_symbols(c, s.machine);
    auto reach = c.reachable();
    for (std::size_t p = 0; p < c.num_classes(); ++p)
      {
        if (!reach[p])
          continue;
        for (const StrategyEntry& e : c.strategy[p])
          {
            if (!is_game_state(a, e.state) || !is_game_state(a, e.target))
              continue;
            bool mine = g.owner_of(e.state) == Player::zero;
            std::vector<Symbol> write;
            switch (e.dir.kind)
              {
              case Direction::Kind::stay:
                write = {sym[p]};
                break;
              case Direction::Kind::down:
                write = {sym[c.child(p, e.dir.symbol)], sym[p]};
                break;
              case Direction::Kind::up:
                break;
              }
            add_move(s, mine, e.state, e.letter, sym[p], e.target,
                     std::move(write));
          }
      }
    return s;
  }

  StrategyPDA extract_realtime(const SolveResult& r)
  {
    StrategyPDA s = skeleton(r, "realtime");
    const GameSpec& g = r.witness_game;
    const TreeAutomaton& a = r.automaton;
    const RegularCandidate& c = r.witness;
    const Normalization& nm = r.normalized->map;
    std::map<int, StateId> ids;
    auto state = [&](int q) {
      auto [it, fresh] = ids.emplace(q, 0);
      if (fresh)
        it->second = s.machine.add_state(g.machine.states.at(q));
      return it->second;
    };
    s.machine.initial = state(g.machine.initial);
    auto sym = class_symbols(c, s.machine);
    auto reach = c.reachable();
    bool has_epsilon = false;
    for (std::size_t p = 0; p < c.num_classes(); ++p)
      {
        if (!reach[p])
          continue;
        for (const StrategyEntry& e : c.strategy[p])
          {
            if (!is_game_state(a, e.state) || !is_game_state(a, e.target)
                || nm.is_intermediate(e.state))
              continue;
            bool mine = g.owner_of(e.state) == Player::zero;
            std::vector<Symbol> write;
            int target = e.target;
            if (e.dir.kind == Direction::Kind::stay)
              write = {sym[p]};
            else if (e.dir.kind == Direction::Kind::down)
              {
                // Chase the ε-pushes of the expansion chain.
                std::vector<int> pushed{c.child(p, e.dir.symbol)};
                while (nm.is_intermediate(target))
                  {
                    int cls = pushed.back();
                    const StrategyEntry* step = nullptr;
                    for (const StrategyEntry& x : c.strategy[cls])
                      if (x.state == target)
                        step = &x;
                    if (!step || step->dir.kind != Direction::Kind::down)
                      throw std::invalid_argument(
                        "realtime extraction: unresolvable push chain");
                    pushed.push_back(c.child(cls, step->dir.symbol));
                    target = step->target;
                  }
                for (auto it = pushed.rbegin(); it != pushed.rend(); ++it)
                  write.push_back(sym[*it]);
                write.push_back(sym[p]);
              }
            has_epsilon |= e.letter == epsilon;
            add_move(s, mine, state(e.state), e.letter, sym[p], state(target),
                     std::move(write));
          }
      }
    s.format.realtime = !has_epsilon;
    return s;
  }

  StrategyPDA strategy_for_game(const SolveResult& r)
  {
    if (r.normalized && !r.normalized->map.identity)
      return extract_realtime(r);
    return extract_general(r);
  }

  StrategyPDA extract_visibly(const StrategyPDA& src, const VisiblyAlphabet& v)
  {
    StrategyPDA s;
    s.name = src.name + "~visibly";
    s.player = src.player;
    s.machine.letters = src.machine.letters;
    const PushdownMachine& m = src.machine;
    PushdownMachine& out = s.machine;

    std::map<std::pair<Symbol, Symbol>, Symbol> pairs;
    for (const Rule& r : m.rules)
      if (r.write.size() == 2)
        {
          auto key = std::make_pair(r.write[0], r.write[1]);
          if (!pairs.count(key))
            pairs[key] = out.add_symbol(m.symbol_name(r.write[0]) + "/"
                                        + m.symbol_name(r.write[1]));
        }
    std::map<std::pair<StateId, Symbol>, StateId> ids;
    auto state = [&](StateId q, Symbol cls) {
      auto [it, fresh] = ids.emplace(std::make_pair(q, cls), 0);
      if (fresh)
        it->second = out.add_state(m.states.at(q) + "|" + m.symbol_name(cls));
      return it->second;
    };
    out.initial = state(m.initial, bottom);
    std::vector<Symbol> tops{bottom};
    for (const auto& [key, id] : pairs)
      tops.push_back(id);

    auto reject = [&](std::size_t i, const std::string& why) {
      throw std::invalid_argument("visibly extraction: rule "
                                  + src.rule_string(i) + " " + why);
    };
    for (std::size_t i = 0; i < m.rules.size(); ++i)
      {
        const Rule& r = m.rules[i];
        Letter x = r.letter != epsilon ? r.letter : src.output[i];
        Letter o = src.output[i];
        StateId from = state(r.from, r.top);
        switch (v.kind_of(x))
          {
          case VisiblyAlphabet::Kind::internal:
            if (r.write != std::vector<Symbol>{r.top})
              reject(i, "moves the stack on an internal letter");
            for (Symbol z : tops)
              {
                out.add_rule({from, r.letter, z, state(r.to, r.top), {z}});
                s.output.push_back(o);
              }
            break;
          case VisiblyAlphabet::Kind::call:
            {
              if (r.write.size() != 2 || r.write[1] != r.top)
                reject(i, "does not push on a call");
              Symbol cell = pairs.at({r.write[0], r.write[1]});
              for (Symbol z : tops)
                {
                  out.add_rule({from, r.letter, z, state(r.to, r.write[0]),
                                {cell, z}});
                  s.output.push_back(o);
                }
              break;
            }
          case VisiblyAlphabet::Kind::ret:
            if (r.top == bottom)
              {
                if (r.write != std::vector<Symbol>{bottom})
                  reject(i, "changes the empty stack on a return");
                out.add_rule({from, r.letter, bottom, state(r.to, bottom),
                              {bottom}});
                s.output.push_back(o);
                break;
              }
            if (!r.write.empty())
              reject(i, "does not pop on a return");
            for (const auto& [key, id] : pairs)
              if (key.first == r.top)
                {
                  out.add_rule({from, r.letter, id, state(r.to, key.second), {}});
                  s.output.push_back(o);
                }
            break;
          case VisiblyAlphabet::Kind::none:
            reject(i, "uses a letter outside the partition");
          }
      }
    s.format.deterministic = true;
    s.format.realtime = true;
    s.format.visibly = v;
    for (std::size_t i = 0; i < out.rules.size(); ++i)
      if (out.rules[i].letter == epsilon && s.output[i] == epsilon)
        s.format.realtime = false;
    if (!s.format.realtime)
      s.format.visibly.reset();
    return s;
  }

  StrategyPDA extract_one_counter(const SolveResult& r)
  {
    const TreeAutomaton& a = r.automaton;
    const RegularCandidate& c = r.witness;
    if (a.gamma != 1)
      throw std::invalid_argument(
        "counter extraction needs a singleton stack alphabet");
    if (r.normalized && !r.normalized->map.identity)
      throw std::invalid_argument("counter extraction needs a normal-form game");
    auto shape = c.lasso_shape();
    if (!shape)
      throw std::invalid_argument("counter extraction needs a lasso witness");
    std::vector<int> order;
    for (int p = c.root; order.size() < shape->first + shape->second;
         p = c.next[p][0])
      order.push_back(p);
    const std::size_t n = order.size();
    const std::size_t l = shape->first;

    StrategyPDA s = skeleton(r, "counter");
    const GameSpec& g = r.witness_game;
    const Symbol A = s.machine.add_symbol(g.machine.symbols.at(1));
    std::map<std::pair<int, std::size_t>, StateId> ids;
    auto state = [&](int q, std::size_t i) {
      auto [it, fresh] = ids.emplace(std::make_pair(q, i), 0);
      if (fresh)
        it->second = s.machine.add_state(g.machine.states.at(q) + "@"
                                         + std::to_string(i));
      return it->second;
    };
    s.machine.initial = state(g.machine.initial, 0);
    for (std::size_t i = 0; i < n; ++i)
      for (const StrategyEntry& e : c.strategy[order[i]])
        {
          if (!is_game_state(a, e.state) || !is_game_state(a, e.target))
            continue;
          bool mine = g.owner_of(e.state) == Player::zero;
          StateId from = state(e.state, i);
          for (Symbol x : {bottom, A})
            {
              switch (e.dir.kind)
                {
                case Direction::Kind::stay:
                  add_move(s, mine, from, e.letter, x, state(e.target, i), {x});
                  break;
                case Direction::Kind::down:
                  if (i + 1 < n)
                    add_move(s, mine, from, e.letter, x,
                             state(e.target, i + 1), {x});
                  else
                    add_move(s, mine, from, e.letter, x, state(e.target, l),
                             {A, x});
                  break;
                case Direction::Kind::up:
                  if (i == 0)
                    break;
                  if (i != l)
                    add_move(s, mine, from, e.letter, x,
                             state(e.target, i - 1), {x});
                  else if (x == bottom)
                    add_move(s, mine, from, e.letter, x,
                             state(e.target, l - 1), {bottom});
                  else
                    add_move(s, mine, from, e.letter, x,
                             state(e.target, n - 1), {});
                  break;
                }
            }
        }
    s.format.one_counter = true;
    s.format.realtime = true;
    for (std::size_t i = 0; i < s.machine.rules.size(); ++i)
      if (s.machine.rules[i].letter == epsilon && s.output[i] == epsilon)
        s.format.realtime = false;
    return s;
  }

  std::optional<StrategyPDA> extract_in_format(const SolveResult& r,
                                               const FormatDescriptor& wanted)
  {
    const FormatDescriptor fmt = wanted.closed();
    std::vector<StrategyPDA> tries;
    auto attempt = [&](auto&& make) {
      try
        {
          tries.push_back(make());
        }
      catch (const std::invalid_argument&)
        {
        }
    };
    if (fmt.one_counter || fmt.blind)
      attempt([&] { return extract_one_counter(r); });
    if (fmt.visibly)
      attempt([&] { return extract_visibly(strategy_for_game(r), *fmt.visibly); });
    if (fmt.realtime && !fmt.visibly)
      attempt([&] { return extract_realtime(r); });
    if (tries.empty() && !fmt.one_counter && !fmt.blind && !fmt.visibly
        && !fmt.realtime)
      attempt([&] { return strategy_for_game(r); });
    for (StrategyPDA& s : tries)
      if (check_strategy_format(s, fmt).ok())
        {
          s.format = fmt;
          return std::move(s);
        }
    return std::nullopt;
  }

  SolveResult solve_in_format(const GameSpec& g, SearchCaps caps,
                              const FormatDescriptor& fmt,
                              std::optional<StrategyPDA>* out)
  {
    SolveResult r = solve_filtered(g, caps, [&](const SolveResult& partial) {
      return extract_in_format(partial, fmt).has_value();
    });
    if (out)
      *out = r.winner ? extract_in_format(r, fmt) : std::nullopt;
    return r;
  }
}
