#include <pdsynth/validate.hpp>

#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace pdsynth
{
  GameSpec compose_product(const StrategyPDA& s, const GameSpec& g)
  {
    g.validate();
    s.validate();
    const PushdownMachine& gm = g.machine;
    const PushdownMachine& sm = s.machine;
    GameSpec out;
    out.name = g.name + "*" + s.name;
    out.condition = g.condition;
    PushdownMachine& m = out.machine;
    m.letters = gm.letters;
    const int shift = s.player == Player::zero ? 0 : 1;

    std::map<std::pair<StateId, StateId>, StateId> states;
    std::map<std::pair<Symbol, Symbol>, Symbol> symbols{{{bottom, bottom}, bottom}};
    std::vector<std::pair<Symbol, Symbol>> symbol_of{{bottom, bottom}};
    std::vector<std::pair<StateId, StateId>> state_of;
    auto state = [&](StateId q, StateId t) {
      auto [it, fresh] = states.emplace(std::make_pair(q, t), 0);
      if (fresh)
        {
          it->second = m.add_state(gm.states.at(q) + "|" + sm.states.at(t));
          state_of.emplace_back(q, t);
          out.col.priority.push_back(g.col(q) + shift);
        }
      return it->second;
    };
    StateId lose = -1;
    auto sink = [&]() {
      if (lose < 0)
        {
          lose = m.add_state("lose");
          state_of.emplace_back(-1, -1);
          out.col.priority.push_back(1);
        }
      return lose;
    };
    auto symbol = [&](Symbol x, Symbol y) {
      if ((x == bottom) != (y == bottom))
        throw std::invalid_argument(
          "compose: strategy stack desynchronized from the game stack");
      auto [it, fresh] = symbols.emplace(std::make_pair(x, y), 0);
      if (fresh)
        {
          it->second = m.add_symbol(gm.symbol_name(x) + "|" + sm.symbol_name(y));
          symbol_of.emplace_back(x, y);
        }
      return it->second;
    };
    auto pair_write = [&](const std::vector<Symbol>& a,
                          const std::vector<Symbol>& b) {
      if (a.size() != b.size())
        throw std::invalid_argument(
          "compose: strategy stack desynchronized from the game stack");
      std::vector<Symbol> w;
      for (std::size_t i = 0; i < a.size(); ++i)
        w.push_back(symbol(a[i], b[i]));
      return w;
    };
    auto strategy_rule = [&](StateId t, Letter a, Symbol top) {
      for (std::size_t i : sm.rules_for(t, top))
        if (sm.rules[i].letter == a)
          return std::optional<std::size_t>(i);
      return std::optional<std::size_t>();
    };

    m.initial = state(gm.initial, sm.initial);
    std::set<std::pair<StateId, Symbol>> done;
    bool grew = true;
    while (grew)
      {
        grew = false;
        const std::size_t ns = m.states.size();
        const std::size_t nsym = m.symbols.size();
        for (std::size_t u = 0; u < ns; ++u)
          for (std::size_t z = 0; z < nsym; ++z)
            {
              StateId from = static_cast<StateId>(u);
              Symbol top = static_cast<Symbol>(z);
              if (!done.insert({from, top}).second)
                continue;
              grew = true;
              if (from == lose)
                {
                  m.add_rule({from, epsilon, top, from, {top}});
                  continue;
                }
              auto [q, t] = state_of[u];
              auto [gx, sy] = symbol_of[z];
              if (g.owner_of(q) == s.player)
                {
                  auto i = strategy_rule(t, epsilon, sy);
                  const Rule* game = nullptr;
                  if (i)
                    for (std::size_t j : gm.rules_for(q, gx))
                      if (gm.rules[j].letter == s.output[*i])
                        game = &gm.rules[j];
                  if (!i || !game)
                    {
                      if (!gm.rules_for(q, gx).empty())
                        m.add_rule({from, epsilon, top, sink(), {top}});
                      continue;
                    }
                  const Rule& sr = sm.rules[*i];
                  m.add_rule({from, game->letter, top, state(game->to, sr.to),
                              pair_write(game->write, sr.write)});
                  continue;
                }
              for (std::size_t j : gm.rules_for(q, gx))
                {
                  const Rule& game = gm.rules[j];
                  auto i = strategy_rule(t, game.letter, sy);
                  if (!i || sm.rules[*i].letter != game.letter
                      || s.output[*i] != epsilon)
                    {
                      m.add_rule({from, game.letter, top, sink(), {top}});
                      continue;
                    }
                  const Rule& sr = sm.rules[*i];
                  m.add_rule({from, game.letter, top, state(game.to, sr.to),
                              pair_write(game.write, sr.write)});
                }
            }
      }
    out.owner.assign(m.states.size(), Player::one);
    int maxp = 1;
    for (int p : out.col.priority)
      maxp = std::max(maxp, p);
    out.col.k = maxp + 1;
    out.format.deterministic = true;
    return out;
  }

  std::string ValidationReport::summary() const
  {
    std::ostringstream os;
    os << (clean ? "clean" : "counterexample") << ": " << leaves
       << " branches, " << lassos << " lassos, " << unresolved
       << " cut by bounds";
    return os.str();
  }

  namespace
  {
    struct Node
    {
      Configuration game;
      Configuration strat;
      Letter move = epsilon;
      std::size_t rule = 0;
    };

    class Explorer
    {
    public:
      Explorer(const StrategyPDA& s, const GameSpec& g, ValidationBounds b)
        : s_(s), g_(g), b_(b)
      {
      }

      ValidationReport run()
      {
        StrategyRunner r(s_);
        path_.push_back({g_.machine.initial_configuration(), r.configuration(),
                         epsilon, 0});
        explore(r);
        return std::move(report_);
      }

    private:
      PlayRecord record(PlayStatus status, std::size_t start) const
      {
        PlayRecord rec;
        rec.status = status;
        for (std::size_t i = 0; i < path_.size(); ++i)
          {
            rec.configs.push_back(path_[i].game);
            if (i > 0)
              {
                rec.moves.push_back(path_[i].move);
                rec.rules.push_back(path_[i].rule);
              }
          }
        rec.lasso_start = start;
        return rec;
      }

      void fail(PlayRecord rec)
      {
        report_.clean = false;
        report_.counterexample = std::move(rec);
        stop_ = true;
      }

      // Lasso closed by the last path entry, if any.
      bool check_lasso()
      {
        const Node& cur = path_.back();
        std::size_t hg = cur.game.height(), hs = cur.strat.height();
        for (std::size_t i = path_.size() - 1; i-- > 0;)
          {
            const Node& e = path_[i];
            hg = std::min(hg, e.game.height());
            hs = std::min(hs, e.strat.height());
            auto dg = lasso_repeat(e.game, cur.game, hg);
            auto ds = lasso_repeat(e.strat, cur.strat, hs);
            if (!dg || !ds)
              continue;
            ++report_.lassos;
            LassoRun run;
            for (std::size_t k = 0; k < i; ++k)
              run.prefix.push_back(path_[k].game);
            for (std::size_t k = i; k + 1 < path_.size(); ++k)
              run.cycle.push_back(path_[k].game);
            run.delta = *dg;
            Player w = evaluate_lasso(run, g_.col, g_.condition);
            if (w != s_.player)
              {
                PlayRecord rec = record(PlayStatus::lasso, i);
                rec.configs.pop_back();
                rec.winner = w;
                rec.lasso = std::move(run);
                fail(std::move(rec));
                return true;
              }
            // Exact repeats end the branch; pumping ones may still be
            // followed by other adversary choices.
            if (*dg == 0 && *ds == 0)
              return true;
          }
        return false;
      }

      void explore(StrategyRunner& r)
      {
        if (stop_)
          return;
        if (check_lasso())
          {
            ++report_.leaves;
            return;
          }
        const Configuration c = path_.back().game;
        if (path_.size() > b_.depth || c.height() > b_.height)
          {
            ++report_.leaves;
            ++report_.unresolved;
            return;
          }
        auto moves = legal_moves(g_, c);
        Player owner = g_.owner_of(c.state);
        if (moves.empty())
          {
            ++report_.leaves;
            if (owner == s_.player)
              {
                PlayRecord rec = record(PlayStatus::dead, 0);
                rec.stuck = owner;
                rec.winner = opponent(owner);
                fail(std::move(rec));
              }
            return;
          }
        if (owner == s_.player)
          {
            StrategyRunner next = r;
            auto out = next.respond();
            const Move* mv = nullptr;
            if (out)
              for (const Move& m : moves)
                if (m.letter == *out)
                  mv = &m;
            if (!mv)
              {
                ++report_.leaves;
                PlayRecord rec = record(PlayStatus::dead, 0);
                rec.stuck = owner;
                rec.winner = opponent(owner);
                fail(std::move(rec));
                return;
              }
            descend(next, *mv);
            return;
          }
        for (const Move& m : moves)
          {
            StrategyRunner next = r;
            if (!next.feed(m.letter))
              {
                path_.push_back({m.target, next.configuration(), m.letter,
                                 m.rule});
                PlayRecord rec = record(PlayStatus::dead, 0);
                rec.stuck = s_.player;
                rec.winner = opponent(s_.player);
                path_.pop_back();
                ++report_.leaves;
                fail(std::move(rec));
                return;
              }
            descend(next, m);
            if (stop_)
              return;
          }
      }

      void descend(StrategyRunner& next, const Move& m)
      {
        path_.push_back({m.target, next.configuration(), m.letter, m.rule});
        explore(next);
        if (!stop_)
          path_.pop_back();
      }

      const StrategyPDA& s_;
      const GameSpec& g_;
      ValidationBounds b_;
      std::vector<Node> path_;
      ValidationReport report_;
      bool stop_ = false;
    };
  }

  ValidationReport validate_strategy(const StrategyPDA& s, const GameSpec& g,
                                     ValidationBounds bounds)
  {
    g.validate();
    s.validate();
    return Explorer(s, g, bounds).run();
  }
}
