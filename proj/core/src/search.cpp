#include <pdsynth/search.hpp>

#include <algorithm>
#include <deque>
#include <stdexcept>

#include <pdsynth/annotation.hpp>

namespace pdsynth
{
  std::string to_string(SolveStatus s)
  {
    switch (s)
      {
      case SolveStatus::solved_player0:
        return "SolvedPlayer0";
      case SolveStatus::solved_player1:
        return "SolvedPlayer1";
      case SolveStatus::unknown_at_cap:
        return "UnknownAtCap";
      }
    return "?";
  }

  namespace
  {
    struct Task
    {
      enum class Kind { activate, edge } kind;
      int cls;
      int state;  // activate
      Symbol sym; // edge
    };

    struct Partial
    {
      RegularCandidate cand;
      std::vector<std::vector<bool>> active;
      std::deque<Task> queue;
    };

    struct Option
    {
      Atom atom;         // atom choice
      int cls = -2;      // edge choice: existing class, or -1 for a new one
    };

    struct Frame
    {
      Partial state;
      Task task;
      std::vector<Option> options;
      std::size_t next = 0;
    };
  }

  struct CandidateEnumerator::Impl
  {
    const TreeAutomaton& a;
    SearchCaps caps;
    SearchStats stats;
    std::vector<Frame> stack;
    std::size_t level = 0;
    std::size_t top_level = 0;
    bool exhausted = false;
    RegularCandidate current;

    Impl(const TreeAutomaton& aut, SearchCaps c) : a(aut), caps(c)
    {
      top_level = a.gamma == 1 ? caps.max_prefix + caps.max_period
                               : caps.max_classes;
    }

    bool lasso_mode() const { return a.gamma == 1; }

    int new_class(Partial& s, Symbol label) const
    {
      int id = s.cand.add_class(label, a.gamma);
      s.active.emplace_back(a.num_states(), false);
      return id;
    }

    void add_entry(Partial& s, int p, int q, const Atom& atom) const
    {
      StrategyEntry e{q, atom.letter, atom.dir, atom.target};
      if (!s.cand.strategy[p].insert(e).second)
        return;
      switch (atom.dir.kind)
        {
        case Direction::Kind::stay:
          s.queue.push_back({Task::Kind::activate, p, atom.target, 0});
          break;
        case Direction::Kind::down:
          {
            int ch = s.cand.child(p, atom.dir.symbol);
            if (ch >= 0)
              s.queue.push_back({Task::Kind::activate, ch, atom.target, 0});
            else
              s.queue.push_back({Task::Kind::edge, p, 0, atom.dir.symbol});
            break;
          }
        case Direction::Kind::up:
          {
            Symbol l = s.cand.label[p];
            for (std::size_t pp = 0; pp < s.cand.num_classes(); ++pp)
              if (s.cand.next[pp][l - 1] == p)
                s.queue.push_back({Task::Kind::activate,
                                   static_cast<int>(pp), atom.target, 0});
            break;
          }
        }
    }

    void set_edge(Partial& s, int p, Symbol sym, int t) const
    {
      s.cand.next[p][sym - 1] = t;
      for (const StrategyEntry& e : s.cand.strategy[p])
        if (e.dir.kind == Direction::Kind::down && e.dir.symbol == sym)
          s.queue.push_back({Task::Kind::activate, t, e.target, 0});
      for (const StrategyEntry& e : s.cand.strategy[t])
        if (e.dir.kind == Direction::Kind::up)
          s.queue.push_back({Task::Kind::activate, p, e.target, 0});
    }

    enum class Outcome { done, choice, fail };

    // Runs forced obligations until a decision is needed.
    Outcome propagate(Partial& s, Task& pending,
                      std::vector<Option>& options) const
    {
      while (!s.queue.empty())
        {
          Task t = s.queue.front();
          s.queue.pop_front();
          if (t.kind == Task::Kind::activate)
            {
              if (s.active[t.cls][t.state])
                continue;
              s.active[t.cls][t.state] = true;
              if (a.is_verifier(t.state))
                continue;
              const Formula& f = a.at(t.state, s.cand.label[t.cls]);
              if (f.conjunctive)
                {
                  for (const Atom& at : f.atoms)
                    if (!a.is_verifier(at.target))
                      add_entry(s, t.cls, t.state, at);
                  continue;
                }
              options.clear();
              for (const Atom& at : f.atoms)
                if (!(at.dir.kind == Direction::Kind::up
                      && t.cls == s.cand.root))
                  options.push_back({at, -2});
              if (options.empty())
                return Outcome::fail;
              if (options.size() == 1)
                {
                  add_entry(s, t.cls, t.state, options.front().atom);
                  continue;
                }
              pending = t;
              return Outcome::choice;
            }
          if (s.cand.child(t.cls, t.sym) >= 0)
            continue;
          options.clear();
          for (std::size_t c = 0; c < s.cand.num_classes(); ++c)
            if (static_cast<int>(c) != s.cand.root && s.cand.label[c] == t.sym)
              options.push_back({{}, static_cast<int>(c)});
          if (s.cand.num_classes() < level)
            options.push_back({{}, -1});
          if (options.empty())
            return Outcome::fail;
          pending = t;
          return Outcome::choice;
        }
      return Outcome::done;
    }

    void apply(Partial& s, const Task& t, const Option& o) const
    {
      if (t.kind == Task::Kind::activate)
        {
          add_entry(s, t.cls, t.state, o.atom);
          return;
        }
      int target = o.cls >= 0 ? o.cls : new_class(s, t.sym);
      set_edge(s, t.cls, t.sym, target);
    }

    bool partial_fails(const Partial& s) const
    {
      RegularCandidate c = s.cand;
      annotate(c, a);
      return !check_traces(c, a).ok;
    }

    RegularCandidate complete(const Partial& s) const
    {
      RegularCandidate c = s.cand;
      const std::size_t real = c.num_classes();
      std::vector<int> inert(a.gamma + 1, -1);
      bool needed = false;
      for (std::size_t p = 0; p < real; ++p)
        for (int n : c.next[p])
          needed |= n < 0;
      if (needed)
        {
          for (Symbol x = 1; x <= static_cast<Symbol>(a.gamma); ++x)
            {
              inert[x] = c.add_class(x, a.gamma);
              c.inert[inert[x]] = true;
            }
          for (Symbol x = 1; x <= static_cast<Symbol>(a.gamma); ++x)
            for (Symbol y = 1; y <= static_cast<Symbol>(a.gamma); ++y)
              c.next[inert[x]][y - 1] = inert[y];
          for (std::size_t p = 0; p < real; ++p)
            for (std::size_t i = 0; i < a.gamma; ++i)
              if (c.next[p][i] < 0)
                c.next[p][i] = inert[i + 1];
        }
      for (Symbol x = 1; x <= static_cast<Symbol>(a.gamma); ++x)
        c.strategy[c.root].insert(
          {a.initial(), epsilon, Direction::down(x), a.verifier(x)});
      for (std::size_t p = 0; p < c.num_classes(); ++p)
        if (static_cast<int>(p) != c.root)
          for (Symbol x = 1; x <= static_cast<Symbol>(a.gamma); ++x)
            c.strategy[p].insert({a.verifier(c.label[p]), epsilon,
                                  Direction::down(x), a.verifier(x)});
      annotate(c, a);
      if (lasso_mode())
        c.lasso = c.lasso_shape();
      return c;
    }

    bool within_caps(const Partial& s) const
    {
      if (s.cand.num_classes() != level)
        return false;
      if (!lasso_mode())
        return true;
      // Walk the real classes from the root.
      std::vector<int> seen(s.cand.num_classes(), -1);
      int p = s.cand.root;
      std::size_t i = 0;
      while (p >= 0 && seen[p] < 0)
        {
          seen[p] = static_cast<int>(i++);
          p = s.cand.next[p][0];
        }
      std::size_t prefix = p < 0 ? i : static_cast<std::size_t>(seen[p]);
      std::size_t period = p < 0 ? 0 : i - seen[p];
      return prefix <= caps.max_prefix && period <= caps.max_period;
    }

    Step settle(Partial s)
    {
      Task pending{};
      std::vector<Option> options;
      Outcome out = propagate(s, pending, options);
      if (out == Outcome::fail)
        {
          ++stats.pruned;
          return Step::working;
        }
      if (caps.prune && partial_fails(s))
        {
          ++stats.pruned;
          return Step::working;
        }
      if (out == Outcome::choice)
        {
          stack.push_back({std::move(s), pending, std::move(options), 0});
          return Step::working;
        }
      if (!within_caps(s))
        return Step::working;
      current = complete(s);
      ++stats.candidates;
      return Step::found;
    }

    Step step()
    {
      if (exhausted)
        return Step::exhausted;
      ++stats.steps;
      if (stack.empty())
        {
          if (level >= top_level)
            {
              exhausted = true;
              return Step::exhausted;
            }
          ++level;
          stats.level = level;
          Partial s;
          s.cand.root = new_class(s, bottom);
          s.queue.push_back({Task::Kind::activate, s.cand.root, a.initial(), 0});
          return settle(std::move(s));
        }
      Frame& f = stack.back();
      if (f.next == f.options.size())
        {
          stack.pop_back();
          return Step::working;
        }
      Partial s = f.state;
      Task t = f.task;
      Option o = f.options[f.next++];
      apply(s, t, o);
      return settle(std::move(s));
    }
  };

  CandidateEnumerator::CandidateEnumerator(const TreeAutomaton& a,
                                           SearchCaps caps)
    : impl_(std::make_unique<Impl>(a, caps))
  {
  }
  CandidateEnumerator::~CandidateEnumerator() = default;
  CandidateEnumerator::CandidateEnumerator(CandidateEnumerator&&) noexcept
    = default;
  CandidateEnumerator&
  CandidateEnumerator::operator=(CandidateEnumerator&&) noexcept = default;

  CandidateEnumerator::Step CandidateEnumerator::step()
  {
    return impl_->step();
  }

  const RegularCandidate& CandidateEnumerator::current() const
  {
    return impl_->current;
  }

  std::optional<RegularCandidate> CandidateEnumerator::next()
  {
    for (;;)
      switch (impl_->step())
        {
        case Step::found:
          return impl_->current;
        case Step::exhausted:
          return std::nullopt;
        case Step::working:
          break;
        }
  }

  const SearchStats& CandidateEnumerator::stats() const { return impl_->stats; }
  std::size_t CandidateEnumerator::max_level() const { return impl_->top_level; }

  SolveResult solve_filtered(const GameSpec& g, SearchCaps caps,
                             const WitnessFilter& accept)
  {
    g.validate();
    if (!g.machine.is_deterministic())
      throw std::invalid_argument(
        "solve: the arena is nondeterministic; winner determination is "
        "undecidable for nondeterministic pushdown games");
    auto start = std::chrono::steady_clock::now();
    auto ng = std::make_shared<NormalizedGame>(normalize_game(g));
    GameSpec games[2] = {ng->game, swap_roles(ng->game)};
    TreeAutomaton autos[2] = {build_automaton(games[0]),
                              build_automaton(games[1])};
    CandidateEnumerator en[2] = {CandidateEnumerator(autos[0], caps),
                                 CandidateEnumerator(autos[1], caps)};
    bool done[2] = {false, false};

    SolveResult res;
    res.caps = caps;
    res.normalized = ng;
    std::size_t steps = 0;
    for (int side = 0; !(done[0] && done[1]); side = 1 - side)
      {
        if (done[side])
          continue;
        if (caps.max_steps && steps >= caps.max_steps)
          break;
        ++steps;
        auto st = en[side].step();
        if (st == CandidateEnumerator::Step::exhausted)
          {
            done[side] = true;
            continue;
          }
        if (st != CandidateEnumerator::Step::found)
          continue;
        const RegularCandidate& c = en[side].current();
        if (!check_consistency(c, autos[side]).ok()
            || !check_traces(c, autos[side]).ok)
          continue;
        SolveResult r;
        r.status = side == 0 ? SolveStatus::solved_player0
                             : SolveStatus::solved_player1;
        r.winner = side == 0 ? Player::zero : Player::one;
        r.witness = c;
        r.normalized = ng;
        r.witness_game = games[side];
        r.automaton = autos[side];
        r.caps = caps;
        if (accept && !accept(r))
          continue;
        res = std::move(r);
        break;
      }
    res.stats0 = en[0].stats();
    res.stats1 = en[1].stats();
    res.seconds = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - start)
                    .count();
    if (res.status == SolveStatus::unknown_at_cap)
      res.message =
        "no witness within the search caps; the game is determined, so one "
        "player has a winning strategy beyond them";
    return res;
  }

  SolveResult solve(const GameSpec& g, SearchCaps caps)
  {
    return solve_filtered(g, caps, nullptr);
  }
}
