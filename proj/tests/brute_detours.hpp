// Detour enumeration on the unrolled strategy tree, used as an oracle for
// the least annotation.
#pragma once

#include <map>
#include <set>
#include <tuple>
#include <vector>

#include <pdsynth/candidate.hpp>

namespace pdsynth::support
{
  struct BruteDetours
  {
    std::set<Detour> all;                 // min over every visited state
    std::set<Detour> at_node;             // min over visits to the start node
    std::set<std::pair<int, int>> pairs;  // endpoints of any detour
    std::set<std::pair<int, int>> single; // endpoints, one return only
  };

  /// Walks of 1..max_len strategy moves that start at a node of class `p`
  /// in state `q`, never move above that node and end on it.
  inline BruteDetours brute_detours(const RegularCandidate& c,
                                    const TreeAutomaton& a, int p,
                                    std::size_t max_len)
  {
    struct Walk
    {
      std::vector<int> path;  // classes below the start node
      int start, state, min_all, min_node;
      bool returned;
      auto operator<=>(const Walk&) const = default;
    };
    std::vector<std::vector<std::vector<StrategyEntry>>> by_state(
      c.num_classes(), std::vector<std::vector<StrategyEntry>>(a.num_states()));
    for (std::size_t k = 0; k < c.num_classes(); ++k)
      for (const auto& e : c.strategy[k])
        by_state[k][e.state].push_back(e);

    BruteDetours out;
    std::set<Walk> layer;
    const int big = 1 << 20;
    for (std::size_t q = 0; q < a.num_states(); ++q)
      layer.insert({{}, static_cast<int>(q), static_cast<int>(q), big, big,
                    false});
    for (std::size_t len = 1; len <= max_len && !layer.empty(); ++len)
      {
        std::set<Walk> next;
        for (const Walk& w : layer)
          {
            int cls = w.path.empty() ? p : w.path.back();
            for (const auto& e : by_state[cls][w.state])
              {
                Walk v = w;
                v.state = e.target;
                switch (e.dir.kind)
                  {
                  case Direction::Kind::stay:
                    break;
                  case Direction::Kind::down:
                    {
                      int ch = c.child(cls, e.dir.symbol);
                      if (ch < 0)
                        continue;
                      v.path.push_back(ch);
                      break;
                    }
                  case Direction::Kind::up:
                    if (v.path.empty())
                      continue;
                    v.path.pop_back();
                    break;
                  }
                int col = a.col[e.target];
                v.min_all = std::min(v.min_all, col);
                if (v.path.empty())
                  {
                    v.min_node = std::min(v.min_node, col);
                    out.all.insert({v.start, v.min_all, v.state});
                    out.at_node.insert({v.start, v.min_node, v.state});
                    out.pairs.insert({v.start, v.state});
                    if (!w.returned)
                      out.single.insert({v.start, v.state});
                    v.returned = true;
                  }
                next.insert(std::move(v));
              }
          }
        layer = std::move(next);
      }
    return out;
  }
}
