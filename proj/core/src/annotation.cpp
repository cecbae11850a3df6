#include <pdsynth/annotation.hpp>

#include <algorithm>

namespace pdsynth
{
  namespace
  {
    // Entries of S(p) grouped by source state.
    using EntryIndex = std::vector<std::vector<std::vector<StrategyEntry>>>;

    EntryIndex index_entries(const RegularCandidate& c, std::size_t nstates)
    {
      EntryIndex idx(c.num_classes(),
                     std::vector<std::vector<StrategyEntry>>(nstates));
      for (std::size_t p = 0; p < c.num_classes(); ++p)
        for (const StrategyEntry& e : c.strategy[p])
          idx[p][e.state].push_back(e);
      return idx;
    }

    // Inserts into a detour set and closes it under composition.
    bool close_detours(std::set<Detour>& h, std::vector<Detour> fresh)
    {
      bool changed = false;
      while (!fresh.empty())
        {
          Detour d = fresh.back();
          fresh.pop_back();
          if (!h.insert(d).second)
            continue;
          changed = true;
          for (const Detour& e : h)
            {
              if (e.to == d.from)
                fresh.push_back({e.from, std::min(e.priority, d.priority), d.to});
              if (d.to == e.from)
                fresh.push_back({d.from, std::min(d.priority, e.priority), e.to});
            }
        }
      return changed;
    }

    bool close_pairs(std::set<std::pair<int, int>>& h,
                     std::vector<std::pair<int, int>> fresh)
    {
      bool changed = false;
      while (!fresh.empty())
        {
          auto d = fresh.back();
          fresh.pop_back();
          if (!h.insert(d).second)
            continue;
          changed = true;
          for (const auto& e : h)
            {
              if (e.second == d.first)
                fresh.push_back({e.first, d.second});
              if (d.second == e.first)
                fresh.push_back({d.first, e.second});
            }
        }
      return changed;
    }

    bool add_all(std::set<std::pair<int, int>>& h,
                 const std::vector<std::pair<int, int>>& xs)
    {
      bool changed = false;
      for (const auto& x : xs)
        changed |= h.insert(x).second;
      return changed;
    }

    // Detours returning to p after exactly one excursion or N-step,
    // tagged with the minimal priority seen after the start.  For stair
    // mode only the endpoints are used.
    std::vector<Detour> single_detours(const RegularCandidate& c,
                                       const TreeAutomaton& a,
                                       const EntryIndex& idx,
                                       const std::vector<Annotation>& ann,
                                       std::size_t p)
    {
      std::vector<Detour> out;
      for (const StrategyEntry& e : c.strategy[p])
        {
          if (e.dir.kind == Direction::Kind::stay)
            {
              out.push_back({e.state, a.col[e.target], e.target});
              continue;
            }
          if (e.dir.kind != Direction::Kind::down)
            continue;
          int ch = c.child(static_cast<int>(p), e.dir.symbol);
          if (ch < 0)
            continue;
          const int q1 = e.target;
          const int c1 = a.col[q1];
          for (const StrategyEntry& u : idx[ch][q1])
            if (u.dir.kind == Direction::Kind::up)
              out.push_back({e.state, std::min(c1, a.col[u.target]), u.target});
          if (a.kind == Condition::parity)
            {
              for (const Detour& d : ann[ch].h)
                if (d.from == q1)
                  for (const StrategyEntry& u : idx[ch][d.to])
                    if (u.dir.kind == Direction::Kind::up)
                      out.push_back({e.state,
                                     std::min({c1, d.priority,
                                               a.col[u.target]}),
                                     u.target});
            }
          else
            {
              for (const auto& [from, to] : ann[ch].h1)
                if (from == q1)
                  for (const StrategyEntry& u : idx[ch][to])
                    if (u.dir.kind == Direction::Kind::up)
                      out.push_back({e.state, 0, u.target});
            }
        }
      return out;
    }
  }

  std::vector<Annotation> least_annotation(const RegularCandidate& c,
                                           const TreeAutomaton& a)
  {
    std::vector<Annotation> ann(c.num_classes());
    EntryIndex idx = index_entries(c, a.num_states());
    bool changed = true;
    while (changed)
      {
        changed = false;
        for (std::size_t p = c.num_classes(); p-- > 0;)
          {
            std::vector<Detour> single = single_detours(c, a, idx, ann, p);
            Annotation& an = ann[p];
            if (a.kind == Condition::parity)
              {
                changed |= close_detours(an.h, std::move(single));
                continue;
              }
            std::vector<std::pair<int, int>> pairs;
            for (const Detour& d : single)
              pairs.emplace_back(d.from, d.to);
            changed |= add_all(an.h2, pairs);
            changed |= close_pairs(an.h1, pairs);
            // h3: chains of single detours, minimum over the return points.
            std::vector<Detour> fresh;
            for (const auto& [q, q2] : an.h2)
              fresh.push_back({q, a.col[q2], q2});
            while (!fresh.empty())
              {
                Detour d = fresh.back();
                fresh.pop_back();
                if (!an.h3.insert(d).second)
                  continue;
                changed = true;
                for (const auto& [q1, q2] : an.h2)
                  if (q1 == d.to)
                    fresh.push_back(
                      {d.from, std::min(d.priority, a.col[q2]), q2});
              }
          }
      }
    return ann;
  }

  void annotate(RegularCandidate& c, const TreeAutomaton& a)
  {
    c.annotation = least_annotation(c, a);
  }
}
