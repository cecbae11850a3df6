#include <pdsynth/lasso.hpp>

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace pdsynth
{
  bool StepsSet::contains(std::size_t n) const
  {
    if (n < prefix_length)
      return std::binary_search(prefix_positions.begin(),
                                prefix_positions.end(), n);
    std::size_t off = (n - prefix_length) % period;
    return std::binary_search(cycle_offsets.begin(), cycle_offsets.end(), off);
  }

  StepsSet steps_positions(std::span<const int> prefix,
                           std::span<const int> cycle, int delta)
  {
    if (cycle.empty())
      throw std::invalid_argument("steps_positions: empty cycle");
    if (delta < 0)
      throw std::invalid_argument(
        "steps_positions: negative cycle height change admits no infinite run");
    StepsSet out;
    out.prefix_length = prefix.size();
    out.period = cycle.size();
    const int cmin = *std::min_element(cycle.begin(), cycle.end());

    // Every later repetition is shifted up by delta >= 0, so the infimum
    // of the whole future from the cycle on is cmin.
    int suffix_min = cmin;
    std::vector<std::size_t> rev;
    for (std::size_t n = prefix.size(); n-- > 0;)
      {
        if (prefix[n] <= suffix_min)
          rev.push_back(n);
        suffix_min = std::min(suffix_min, prefix[n]);
      }
    out.prefix_positions.assign(rev.rbegin(), rev.rend());

    suffix_min = cmin + delta;
    rev.clear();
    for (std::size_t j = cycle.size(); j-- > 0;)
      {
        if (cycle[j] <= suffix_min)
          rev.push_back(j);
        suffix_min = std::min(suffix_min, cycle[j]);
      }
    out.cycle_offsets.assign(rev.rbegin(), rev.rend());
    return out;
  }

  std::vector<int> LassoRun::prefix_heights() const
  {
    std::vector<int> h;
    for (const auto& c : prefix)
      h.push_back(static_cast<int>(c.height()));
    return h;
  }

  std::vector<int> LassoRun::cycle_heights() const
  {
    std::vector<int> h;
    for (const auto& c : cycle)
      h.push_back(static_cast<int>(c.height()));
    return h;
  }

  Player evaluate_lasso(const LassoRun& run, const PriorityFunction& col,
                        Condition kind)
  {
    if (run.cycle.empty())
      throw std::invalid_argument("evaluate_lasso: empty cycle");
    int best = std::numeric_limits<int>::max();
    if (kind == Condition::parity)
      {
        for (const auto& c : run.cycle)
          best = std::min(best, col(c.state));
      }
    else
      {
        auto ph = run.prefix_heights();
        auto ch = run.cycle_heights();
        StepsSet steps = steps_positions(ph, ch, run.delta);
        for (std::size_t j : steps.cycle_offsets)
          best = std::min(best, col(run.cycle[j].state));
      }
    return winner_of_priority(best);
  }

  std::optional<int> lasso_repeat(const Configuration& earlier,
                                  const Configuration& later,
                                  std::size_t min_height_between)
  {
    if (earlier.state != later.state || earlier.top() != later.top())
      return std::nullopt;
    if (later.height() < earlier.height()
        || min_height_between < earlier.height())
      return std::nullopt;
    return static_cast<int>(later.height() - earlier.height());
  }

  std::optional<bool> accepts_ultimately_periodic(
    const PushdownMachine& m, const PriorityFunction& col, Condition kind,
    std::span<const Letter> u, std::span<const Letter> v,
    std::size_t max_steps)
  {
    if (v.empty())
      throw std::invalid_argument("accepts_ultimately_periodic: empty period");
    struct Entry
    {
      Configuration config;
      long phase;             // -1 while still reading u
      std::size_t consumed;   // letters read so far
    };
    std::vector<Entry> hist;
    std::vector<std::size_t> mono;  // history indices with height <= all later

    Configuration cur = m.initial_configuration();
    std::size_t consumed = 0;
    auto phase_of = [&](std::size_t c) -> long {
      return c < u.size() ? -1 : static_cast<long>((c - u.size()) % v.size());
    };
    auto letter_at = [&](std::size_t c) {
      return c < u.size() ? u[c] : v[(c - u.size()) % v.size()];
    };

    for (std::size_t step = 0; step <= max_steps; ++step)
      {
        long phase = phase_of(consumed);
        while (!mono.empty()
               && hist[mono.back()].config.height() > cur.height())
          mono.pop_back();
        for (std::size_t i : mono)
          {
            const Entry& e = hist[i];
            // Inside u only ε-loops can repeat.
            if (e.phase != phase || (phase < 0 && e.consumed != consumed))
              continue;
            auto d = lasso_repeat(e.config, cur, e.config.height());
            if (!d)
              continue;
            if (e.consumed == consumed)
              return false;  // ε-loop: the word is never read
            LassoRun run;
            for (std::size_t k = 0; k < i; ++k)
              run.prefix.push_back(hist[k].config);
            for (std::size_t k = i; k < hist.size(); ++k)
              run.cycle.push_back(hist[k].config);
            run.delta = *d;
            return evaluate_lasso(run, col, kind) == Player::zero;
          }
        hist.push_back({cur, phase, consumed});
        mono.push_back(hist.size() - 1);

        const Rule* chosen = nullptr;
        for (std::size_t i : m.rules_for(cur.state, cur.top()))
          if (m.rules[i].letter == epsilon)
            chosen = &m.rules[i];
        if (!chosen)
          {
            Letter a = letter_at(consumed);
            for (std::size_t i : m.rules_for(cur.state, cur.top()))
              if (m.rules[i].letter == a)
                chosen = &m.rules[i];
            if (!chosen)
              return false;
            ++consumed;
          }
        cur = m.apply(cur, *chosen);
      }
    return std::nullopt;
  }
}
