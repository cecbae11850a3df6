#include <pdsynth/candidate.hpp>

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <sstream>

namespace pdsynth
{
  std::size_t RegularCandidate::real_classes() const
  {
    std::size_t n = 0;
    for (std::size_t p = 0; p < num_classes(); ++p)
      if (p >= inert.size() || !inert[p])
        ++n;
    return n;
  }

  int RegularCandidate::add_class(Symbol l, std::size_t gamma)
  {
    label.push_back(l);
    next.emplace_back(gamma, -1);
    strategy.emplace_back();
    annotation.emplace_back();
    inert.push_back(false);
    return static_cast<int>(label.size() - 1);
  }

  std::vector<bool> RegularCandidate::reachable() const
  {
    std::vector<bool> seen(num_classes(), false);
    if (num_classes() == 0)
      return seen;
    std::vector<int> work{root};
    seen[root] = true;
    while (!work.empty())
      {
        int p = work.back();
        work.pop_back();
        for (int c : next[p])
          if (c >= 0 && !seen[c])
            {
              seen[c] = true;
              work.push_back(c);
            }
      }
    return seen;
  }

  std::vector<std::vector<int>> RegularCandidate::predecessors() const
  {
    std::vector<std::vector<int>> pred(num_classes());
    auto reach = reachable();
    for (std::size_t p = 0; p < num_classes(); ++p)
      if (reach[p])
        for (int c : next[p])
          if (c >= 0
              && std::find(pred[c].begin(), pred[c].end(), static_cast<int>(p))
                   == pred[c].end())
            pred[c].push_back(static_cast<int>(p));
    return pred;
  }

  std::optional<std::pair<std::size_t, std::size_t>>
  RegularCandidate::lasso_shape() const
  {
    if (num_classes() == 0 || next[root].size() != 1)
      return std::nullopt;
    std::vector<int> order;
    std::map<int, std::size_t> pos;
    int p = root;
    while (p >= 0 && !pos.count(p))
      {
        pos[p] = order.size();
        order.push_back(p);
        p = next[p][0];
      }
    if (p < 0)
      return std::nullopt;
    return std::make_pair(pos[p], order.size() - pos[p]);
  }

  namespace
  {
    std::string dir_name(const Direction& d)
    {
      switch (d.kind)
        {
        case Direction::Kind::up:
          return "up";
        case Direction::Kind::stay:
          return "N";
        case Direction::Kind::down:
          return "down" + std::to_string(d.symbol);
        }
      return "?";
    }

    // Classes reached by following `dir` from p.
    std::vector<int> targets(const RegularCandidate& c,
                             const std::vector<std::vector<int>>& pred, int p,
                             const Direction& d)
    {
      switch (d.kind)
        {
        case Direction::Kind::stay:
          return {p};
        case Direction::Kind::down:
          {
            int ch = c.child(p, d.symbol);
            if (ch < 0)
              return {};
            return {ch};
          }
        case Direction::Kind::up:
          return pred[p];
        }
      return {};
    }
  }

  ConsistencyVerdict check_consistency(const RegularCandidate& c,
                                       const TreeAutomaton& a)
  {
    ConsistencyVerdict v;
    auto reach = c.reachable();
    auto pred = c.predecessors();
    auto fail = [&](int cond, std::size_t p, std::string msg) {
      v.violations.push_back({cond, static_cast<int>(p), std::move(msg)});
    };
    for (std::size_t p = 0; p < c.num_classes(); ++p)
      {
        if (!reach[p])
          continue;
        Symbol expected = static_cast<int>(p) == c.root ? bottom : -1;
        if (expected == bottom && c.label[p] != bottom)
          fail(1, p, "root class not labelled by the bottom symbol");
        for (std::size_t q = 0; q < c.num_classes(); ++q)
          for (std::size_t i = 0; i < c.next[q].size(); ++i)
            if (reach[q] && c.next[q][i] == static_cast<int>(p)
                && c.label[p] != static_cast<Symbol>(i + 1))
              fail(1, p, "class label differs from the letter leading to it");

        std::map<int, std::vector<std::pair<Direction, int>>> chosen;
        for (const StrategyEntry& e : c.strategy[p])
          chosen[e.state].emplace_back(e.dir, e.target);
        for (const auto& [q, set] : chosen)
          {
            const Formula& f = a.at(q, c.label[p]);
            if (!f.satisfied_by(set))
              fail(1, p, "entries of " + a.names[q]
                           + " do not satisfy its transition formula");
          }
        for (const StrategyEntry& e : c.strategy[p])
          {
            const Formula& f = a.at(e.state, c.label[p]);
            Atom atom{e.letter, e.dir, e.target};
            if (std::find(f.atoms.begin(), f.atoms.end(), atom) == f.atoms.end())
              fail(1, p, "entry " + a.names[e.state] + " " + dir_name(e.dir)
                           + " " + a.names[e.target]
                           + " is not a transition of the automaton");
            if (e.dir.kind == Direction::Kind::up && static_cast<int>(p) == c.root)
              fail(2, p, "up move at the root");
            if (e.dir.kind == Direction::Kind::down && c.child(p, e.dir.symbol) < 0)
              fail(2, p, "down move into an undefined child");
            for (int t : targets(c, pred, static_cast<int>(p), e.dir))
              {
                bool defined = std::any_of(
                  c.strategy[t].begin(), c.strategy[t].end(),
                  [&](const StrategyEntry& x) { return x.state == e.target; });
                if (!defined && !a.at(e.target, c.label[t]).is_true())
                  fail(2, p, "no strategy for " + a.names[e.target]
                               + " in class " + std::to_string(t));
              }
          }
      }
    bool root_defined = std::any_of(
      c.strategy[c.root].begin(), c.strategy[c.root].end(),
      [&](const StrategyEntry& x) { return x.state == a.initial(); });
    if (!root_defined && !a.at(a.initial(), bottom).is_true())
      fail(3, c.root, "no strategy for the initial state at the root");
    return v;
  }

  TraceGraph trace_graph(const RegularCandidate& c, const TreeAutomaton& a)
  {
    TraceGraph g;
    std::map<TraceVertex, int> id;
    std::deque<int> work;
    auto vertex = [&](TraceVertex v) {
      auto [it, fresh] = id.emplace(v, static_cast<int>(g.vertices.size()));
      if (fresh)
        {
          g.vertices.push_back(v);
          g.edges.emplace_back();
          work.push_back(it->second);
        }
      return it->second;
    };
    vertex({c.root, a.initial(), a.col[a.initial()]});
    while (!work.empty())
      {
        int u = work.front();
        work.pop_front();
        TraceVertex v = g.vertices[u];
        std::vector<int> out;
        for (const StrategyEntry& e : c.strategy[v.cls])
          if (e.state == v.state && e.dir.kind == Direction::Kind::down)
            {
              int ch = c.child(v.cls, e.dir.symbol);
              if (ch >= 0)
                out.push_back(vertex({ch, e.target, a.col[e.target]}));
            }
        for (const Detour& d : c.annotation[v.cls].summary(a.kind))
          if (d.from == v.state)
            out.push_back(vertex({v.cls, d.to, d.priority}));
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        g.edges[u] = std::move(out);
      }
    return g;
  }

  TraceVerdict check_traces(const RegularCandidate& c, const TreeAutomaton& a)
  {
    TraceGraph g = trace_graph(c, a);
    const int n = static_cast<int>(g.vertices.size());
    for (int d = 1; d < a.k; d += 2)
      {
        // Tarjan on vertices of priority >= d.
        std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
        std::vector<bool> on(n, false);
        std::vector<int> stack;
        int counter = 0, ncomp = 0;
        std::function<void(int)> visit = [&](int u) {
          index[u] = low[u] = counter++;
          stack.push_back(u);
          on[u] = true;
          for (int w : g.edges[u])
            {
              if (g.vertices[w].priority < d)
                continue;
              if (index[w] < 0)
                {
                  visit(w);
                  low[u] = std::min(low[u], low[w]);
                }
              else if (on[w])
                low[u] = std::min(low[u], index[w]);
            }
          if (low[u] == index[u])
            {
              int w;
              do
                {
                  w = stack.back();
                  stack.pop_back();
                  on[w] = false;
                  comp[w] = ncomp;
                }
              while (w != u);
              ++ncomp;
            }
        };
        for (int u = 0; u < n; ++u)
          if (index[u] < 0 && g.vertices[u].priority >= d)
            visit(u);
        for (int u = 0; u < n; ++u)
          {
            if (g.vertices[u].priority != d)
              continue;
            // Shortest cycle through u inside its component.
            std::vector<int> parent(n, -2);
            std::deque<int> q;
            for (int w : g.edges[u])
              if (comp[w] == comp[u] && parent[w] == -2)
                {
                  parent[w] = u;
                  q.push_back(w);
                }
            while (!q.empty() && parent[u] == -2)
              {
                int x = q.front();
                q.pop_front();
                for (int w : g.edges[x])
                  if (comp[w] == comp[u] && parent[w] == -2)
                    {
                      parent[w] = x;
                      q.push_back(w);
                    }
              }
            if (parent[u] == -2)
              continue;
            TraceVerdict bad;
            bad.ok = false;
            std::vector<int> path{u};
            for (int x = parent[u]; x != u; x = parent[x])
              path.push_back(x);
            path.push_back(u);
            std::reverse(path.begin(), path.end());
            for (int x : path)
              bad.cycle.push_back(g.vertices[x]);
            return bad;
          }
      }
    return {};
  }

  std::string describe(const RegularCandidate& c, const TreeAutomaton& a,
                       const PushdownMachine& m)
  {
    std::ostringstream os;
    for (std::size_t p = 0; p < c.num_classes(); ++p)
      {
        os << "class " << p << " [" << m.symbol_name(c.label[p]) << "]";
        if (c.inert[p])
          os << " (inert)";
        os << " ->";
        for (std::size_t i = 0; i < c.next[p].size(); ++i)
          os << " " << m.symbol_name(static_cast<Symbol>(i + 1)) << ":"
             << c.next[p][i];
        os << "\n";
        for (const StrategyEntry& e : c.strategy[p])
          if (!a.is_verifier(e.state) && !a.is_verifier(e.target))
            os << "  " << a.names[e.state] << " "
               << to_string(a, {e.letter, e.dir, e.target}, m) << "\n";
      }
    return os.str();
  }
}
