#include <pdsynth/simulate.hpp>

#include <algorithm>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

namespace pdsynth
{
  std::string to_string(PlayStatus s)
  {
    switch (s)
      {
      case PlayStatus::ongoing:
        return "ongoing";
      case PlayStatus::lasso:
        return "lasso";
      case PlayStatus::dead:
        return "dead";
      case PlayStatus::aborted:
        return "aborted";
      }
    return "?";
  }

  std::optional<std::size_t>
  ScriptedAgent::choose(const GameSpec&, const Configuration&,
                        std::span<const Move> moves)
  {
    if (next_ < script_.size())
      for (std::size_t i = 0; i < moves.size(); ++i)
        if (moves[i].letter == script_[next_])
          {
            ++next_;
            return i;
          }
    return moves.size() - 1;
  }

  std::optional<std::size_t>
  RandomAgent::choose(const GameSpec&, const Configuration&,
                      std::span<const Move> moves)
  {
    std::uniform_int_distribution<std::size_t> d(0, moves.size() - 1);
    return d(rng_);
  }

  std::optional<std::size_t>
  InteractiveAgent::choose(const GameSpec& g, const Configuration& c,
                           std::span<const Move> moves)
  {
    const auto& m = g.machine;
    out_ << "at " << m.config_string(c) << " (" << to_string(g.owner_of(c.state))
         << ")\n";
    for (std::size_t i = 0; i < moves.size(); ++i)
      out_ << "  " << i << ": " << m.letter_name(moves[i].letter) << " -> "
           << m.config_string(moves[i].target) << "\n";
    for (;;)
      {
        out_ << "move> " << std::flush;
        std::string line;
        if (!std::getline(in_, line))
          return std::nullopt;
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok))
          continue;
        if (tok == "q" || tok == "quit")
          return std::nullopt;
        try
          {
            std::size_t used = 0;
            unsigned long v = std::stoul(tok, &used);
            if (used == tok.size() && v < moves.size())
              return v;
          }
        catch (const std::exception&)
          {
          }
        out_ << "enter a number between 0 and " << moves.size() - 1
             << ", or q\n";
      }
  }

  void InteractiveAgent::observe(const GameSpec& g, const Move& m)
  {
    out_ << "played " << g.machine.letter_name(m.letter) << "\n";
  }

  std::optional<std::size_t>
  StrategyAgent::choose(const GameSpec&, const Configuration&,
                        std::span<const Move> moves)
  {
    auto out = runner_.respond();
    if (!out)
      return std::nullopt;
    fired_ = true;
    for (std::size_t i = 0; i < moves.size(); ++i)
      if (moves[i].letter == *out)
        return i;
    return std::nullopt;
  }

  void StrategyAgent::observe(const GameSpec&, const Move& m)
  {
    if (fired_)
      {
        fired_ = false;
        return;
      }
    runner_.feed(m.letter);
  }

  namespace
  {
    struct Snapshot
    {
      Configuration game;
      std::optional<Configuration> mem0;
      std::optional<Configuration> mem1;
    };

    // Index of the earliest history entry that `cur` repeats as a lasso,
    // together with the game height increase.
    std::optional<std::pair<std::size_t, int>>
    find_repeat(const std::vector<Snapshot>& hist, const Snapshot& cur)
    {
      std::size_t hg = cur.game.height();
      std::size_t h0 = cur.mem0 ? cur.mem0->height() : 0;
      std::size_t h1 = cur.mem1 ? cur.mem1->height() : 0;
      std::optional<std::pair<std::size_t, int>> found;
      for (std::size_t i = hist.size(); i-- > 0;)
        {
          const Snapshot& e = hist[i];
          hg = std::min(hg, e.game.height());
          if (e.mem0)
            h0 = std::min(h0, e.mem0->height());
          if (e.mem1)
            h1 = std::min(h1, e.mem1->height());
          auto d = lasso_repeat(e.game, cur.game, hg);
          if (!d)
            continue;
          if (e.mem0 && !lasso_repeat(*e.mem0, *cur.mem0, h0))
            continue;
          if (e.mem1 && !lasso_repeat(*e.mem1, *cur.mem1, h1))
            continue;
          return std::make_pair(i, *d);
        }
      return found;
    }
  }

  PlayRecord simulate(const GameSpec& g, Agent& player0, Agent& player1,
                      SimulationBounds bounds)
  {
    PlayRecord rec;
    std::vector<Snapshot> hist;
    Configuration cur = g.machine.initial_configuration();
    rec.configs.push_back(cur);
    for (;;)
      {
        Snapshot snap{cur, player0.memory(), player1.memory()};
        if (auto rep = find_repeat(hist, snap))
          {
            rec.configs.pop_back();
            rec.status = PlayStatus::lasso;
            rec.lasso_start = rep->first;
            LassoRun run;
            run.prefix.assign(rec.configs.begin(),
                              rec.configs.begin() + rep->first);
            run.cycle.assign(rec.configs.begin() + rep->first,
                             rec.configs.end());
            run.delta = rep->second;
            rec.winner = evaluate_lasso(run, g.col, g.condition);
            rec.lasso = std::move(run);
            // The move closing the cycle stays recorded.
            return rec;
          }
        hist.push_back(std::move(snap));
        if (rec.moves.size() >= bounds.max_steps
            || cur.height() > bounds.max_height)
          return rec;
        auto moves = legal_moves(g, cur);
        Player owner = g.owner_of(cur.state);
        if (moves.empty())
          {
            rec.status = PlayStatus::dead;
            rec.stuck = owner;
            rec.winner = opponent(owner);
            return rec;
          }
        Agent& agent = owner == Player::zero ? player0 : player1;
        auto pick = agent.choose(g, cur, moves);
        if (!pick || *pick >= moves.size())
          {
            rec.stuck = owner;
            if (dynamic_cast<InteractiveAgent*>(&agent))
              {
                rec.status = PlayStatus::aborted;
              }
            else
              {
                rec.status = PlayStatus::dead;
                rec.winner = opponent(owner);
              }
            return rec;
          }
        const Move& mv = moves[*pick];
        player0.observe(g, mv);
        player1.observe(g, mv);
        rec.moves.push_back(mv.letter);
        rec.rules.push_back(mv.rule);
        cur = mv.target;
        rec.configs.push_back(cur);
      }
  }

  bool replays(const GameSpec& g, const PlayRecord& r)
  {
    if (r.configs.empty())
      return false;
    Configuration c = g.machine.initial_configuration();
    if (r.configs.front() != c)
      return false;
    for (std::size_t i = 0; i < r.rules.size(); ++i)
      {
        const Rule& rule = g.machine.rules.at(r.rules[i]);
        if (rule.from != c.state || rule.top != c.top()
            || rule.letter != r.moves[i])
          return false;
        c = g.machine.apply(c, rule);
        // A closing lasso move lands on a configuration not stored again.
        if (i + 1 < r.configs.size() && r.configs[i + 1] != c)
          return false;
      }
    return true;
  }

  std::string describe(const GameSpec& g, const PlayRecord& r)
  {
    std::ostringstream os;
    const auto& m = g.machine;
    for (std::size_t i = 0; i < r.configs.size(); ++i)
      {
        if (r.status == PlayStatus::lasso && i == r.lasso_start)
          os << "-- cycle --\n";
        os << m.config_string(r.configs[i]);
        if (i < r.moves.size())
          os << "  --" << m.letter_name(r.moves[i]) << "-->";
        os << "\n";
      }
    os << "status: " << to_string(r.status);
    if (r.status == PlayStatus::lasso && r.lasso)
      os << " (height change " << r.lasso->delta << ")";
    if (r.stuck)
      os << ", stuck: " << to_string(*r.stuck);
    if (r.winner)
      os << ", winner: " << to_string(*r.winner);
    os << "\n";
    return os.str();
  }
}
