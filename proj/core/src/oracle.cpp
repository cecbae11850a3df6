#include <pdsynth/oracle.hpp>

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>

namespace pdsynth
{
  FiniteArena build_arena(const GameSpec& g, std::size_t height_cap)
  {
    g.validate();
    FiniteArena a;
    std::map<Configuration, int> id;
    std::deque<int> work;
    auto vertex = [&](const Configuration& c) {
      if (c.height() > height_cap)
        throw std::runtime_error("arena not closed under cap");
      auto [it, fresh] = id.emplace(c, static_cast<int>(a.vertices.size()));
      if (fresh)
        {
          a.vertices.push_back(c);
          a.owner.push_back(g.owner_of(c.state));
          a.priority.push_back(g.col(c.state));
          a.edges.emplace_back();
          work.push_back(it->second);
        }
      return it->second;
    };
    a.initial = vertex(g.machine.initial_configuration());
    int sink[2] = {-1, -1};  // sink won by Player0, by Player1
    auto sink_for = [&](Player winner) {
      int w = winner == Player::zero ? 0 : 1;
      if (sink[w] < 0)
        {
          sink[w] = static_cast<int>(a.vertices.size());
          a.vertices.push_back({-1 - w, {bottom}});
          a.owner.push_back(Player::zero);
          a.priority.push_back(w);
          a.edges.push_back({sink[w]});
        }
      return sink[w];
    };
    while (!work.empty())
      {
        int u = work.front();
        work.pop_front();
        Configuration c = a.vertices[u];
        std::vector<int> out;
        for (const Move& m : legal_moves(g, c))
          out.push_back(vertex(m.target));
        if (out.empty())
          out.push_back(sink_for(opponent(a.owner[u])));
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        a.edges[u] = std::move(out);
      }
    return a;
  }

  namespace
  {
    using Set = std::vector<bool>;

    Set attractor(const FiniteArena& a, const Set& sub, const Set& target,
                  Player p, const std::vector<std::vector<int>>& pred)
    {
      const std::size_t n = a.vertices.size();
      Set attr = target;
      std::vector<int> count(n, 0);
      for (std::size_t u = 0; u < n; ++u)
        if (sub[u])
          for (int w : a.edges[u])
            count[u] += sub[w] ? 1 : 0;
      std::deque<int> work;
      for (std::size_t u = 0; u < n; ++u)
        if (attr[u])
          work.push_back(static_cast<int>(u));
      while (!work.empty())
        {
          int w = work.front();
          work.pop_front();
          for (int u : pred[w])
            {
              if (!sub[u] || attr[u])
                continue;
              if (a.owner[u] == p || --count[u] == 0)
                {
                  attr[u] = true;
                  work.push_back(u);
                }
            }
        }
      return attr;
    }

    // Returns the winning region of Player0 within `sub`.
    Set solve(const FiniteArena& a, const Set& sub,
              const std::vector<std::vector<int>>& pred)
    {
      const std::size_t n = a.vertices.size();
      int d = -1;
      for (std::size_t u = 0; u < n; ++u)
        if (sub[u] && (d < 0 || a.priority[u] < d))
          d = a.priority[u];
      if (d < 0)
        return Set(n, false);
      Player p = winner_of_priority(d);
      Set top(n, false);
      for (std::size_t u = 0; u < n; ++u)
        top[u] = sub[u] && a.priority[u] == d;
      Set attr = attractor(a, sub, top, p, pred);
      Set rest(n, false);
      for (std::size_t u = 0; u < n; ++u)
        rest[u] = sub[u] && !attr[u];
      Set w0 = solve(a, rest, pred);
      Set opp(n, false);  // opponent's region in `rest`
      bool empty = true;
      for (std::size_t u = 0; u < n; ++u)
        {
          bool zero = w0[u];
          opp[u] = rest[u] && (p == Player::zero ? !zero : zero);
          empty &= !opp[u];
        }
      if (empty)
        {
          Set win(n, false);
          for (std::size_t u = 0; u < n; ++u)
            win[u] = sub[u] && p == Player::zero;
          return win;
        }
      Set battr = attractor(a, sub, opp, opponent(p), pred);
      Set rest2(n, false);
      for (std::size_t u = 0; u < n; ++u)
        rest2[u] = sub[u] && !battr[u];
      Set w0b = solve(a, rest2, pred);
      Set win(n, false);
      for (std::size_t u = 0; u < n; ++u)
        {
          if (!sub[u])
            continue;
          if (battr[u])
            win[u] = opponent(p) == Player::zero;
          else
            win[u] = w0b[u];
        }
      return win;
    }
  }

  std::vector<Player> zielonka(const FiniteArena& a)
  {
    const std::size_t n = a.vertices.size();
    std::vector<std::vector<int>> pred(n);
    for (std::size_t u = 0; u < n; ++u)
      for (int w : a.edges[u])
        pred[w].push_back(static_cast<int>(u));
    Set w0 = solve(a, Set(n, true), pred);
    std::vector<Player> out(n);
    for (std::size_t u = 0; u < n; ++u)
      out[u] = w0[u] ? Player::zero : Player::one;
    return out;
  }

  Player finite_arena_oracle(const GameSpec& g, std::size_t height_cap)
  {
    if (g.condition != Condition::parity)
      throw std::invalid_argument(
        "the finite-arena oracle handles parity games only");
    FiniteArena a = build_arena(g, height_cap);
    return zielonka(a)[a.initial];
  }
}
