#include <pdsynth/normalize.hpp>

#include <map>
#include <stdexcept>

namespace pdsynth
{
  bool is_normal_form(const PushdownMachine& m)
  {
    for (const Rule& r : m.rules)
      if (shape_of(r) == RuleShape::other)
        return false;
    return true;
  }

  namespace
  {
    bool top_preserving(const PushdownMachine& m)
    {
      for (const Rule& r : m.rules)
        if (r.top != bottom && !r.write.empty() && r.write.back() != r.top)
          return false;
      return true;
    }

    int padding_priority(const PriorityFunction& col)
    {
      int e = col.max_priority();
      return e % 2 == 0 ? e : e + 1;
    }

    // Builds the encoded machine.  Chains of pushes run through
    // intermediate states keyed by (end state, cells still to push).
    class Builder
    {
    public:
      Builder(const PushdownMachine& m, const PriorityFunction& col,
              Normalization& out)
        : m_(m), col_(col), out_(out), pad_(padding_priority(col))
      {
      }

      StateId intermediate(StateId end, const std::vector<Symbol>& rest)
      {
        auto key = std::make_pair(end, rest);
        if (auto it = inter_.find(key); it != inter_.end())
          return it->second;
        std::string name = out_.machine.states.at(end) + "<";
        for (Symbol s : rest)
          name += out_.machine.symbols.at(s);
        name += ">";
        StateId id = out_.machine.add_state(name);
        out_.origin.push_back(std::nullopt);
        out_.chain_end.push_back(end);
        out_.col.priority.push_back(pad_);
        inter_.emplace(key, id);
        pending_.push_back({id, rest, end});
        return id;
      }

      // State reached after pushing cells[0..i]; cells are bottom-up.
      StateId after_push(StateId end, const std::vector<Symbol>& cells,
                         std::size_t i)
      {
        if (i + 1 == cells.size())
          return end;
        return intermediate(end, {cells.begin() + i + 1, cells.end()});
      }

      // Intermediate rules: on any readable top push the next cell.
      void flush(const std::vector<Symbol>& readable_tops)
      {
        while (!pending_.empty())
          {
            auto [id, rest, end] = pending_.back();
            pending_.pop_back();
            StateId next = after_push(end, rest, 0);
            for (Symbol t : readable_tops)
              out_.machine.add_rule({id, epsilon, t, next, {rest.front(), t}});
          }
      }

    private:
      struct Pending
      {
        StateId id;
        std::vector<Symbol> rest;
        StateId end;
      };
      const PushdownMachine& m_;
      const PriorityFunction& col_;
      Normalization& out_;
      int pad_;
      std::map<std::pair<StateId, std::vector<Symbol>>, StateId> inter_;
      std::vector<Pending> pending_;
    };

    void normalize_chain(const PushdownMachine& m, const PriorityFunction& col,
                         Normalization& out)
    {
      out.mode = Normalization::Mode::chain;
      out.machine.states = m.states;
      out.machine.letters = m.letters;
      out.machine.symbols = m.symbols;
      out.machine.initial = m.initial;
      out.col = col;
      for (std::size_t q = 0; q < m.num_states(); ++q)
        {
          out.origin.push_back(std::make_pair(static_cast<StateId>(q), -1));
          out.chain_end.push_back(static_cast<StateId>(q));
        }
      Builder b(m, col, out);
      for (const Rule& r : m.rules)
        {
          std::vector<Symbol> cells = out.pushed_cells(r);
          if (cells.empty())
            {
              out.machine.add_rule(r);
              continue;
            }
          StateId next = b.after_push(r.to, cells, 0);
          out.machine.add_rule({r.from, r.letter, r.top, next,
                                {cells.front(), r.top}});
        }
      std::vector<Symbol> tops;
      for (std::size_t s = 0; s < m.symbols.size(); ++s)
        tops.push_back(static_cast<Symbol>(s));
      b.flush(tops);
    }

    void normalize_top_in_control(const PushdownMachine& m,
                                  const PriorityFunction& col,
                                  Normalization& out)
    {
      out.mode = Normalization::Mode::top_in_control;
      out.machine.letters = m.letters;
      out.machine.symbols = m.symbols;
      out.bottom_marker = out.machine.add_symbol(m.symbols.at(bottom) + "^");
      const std::size_t ntops = m.symbols.size();
      for (std::size_t q = 0; q < m.num_states(); ++q)
        for (std::size_t x = 0; x < ntops; ++x)
          {
            out.machine.add_state(m.states[q] + "[" + m.symbols[x] + "]");
            out.origin.push_back(std::make_pair(static_cast<StateId>(q),
                                                static_cast<Symbol>(x)));
            out.chain_end.push_back(
              static_cast<StateId>(out.machine.states.size() - 1));
            out.col.priority.push_back(col(static_cast<StateId>(q)));
          }
      out.col.k = col.k;
      out.machine.initial = out.encode_state(m.initial, bottom);

      // Encoded cells above the bottom hold Γ or the marker.
      std::vector<Symbol> upper_cells;
      for (std::size_t s = 1; s < out.machine.symbols.size(); ++s)
        upper_cells.push_back(static_cast<Symbol>(s));

      Builder b(m, col, out);
      for (const Rule& r : m.rules)
        {
          StateId from = out.encode_state(r.from, r.top);
          std::vector<Symbol> cells_read =
            r.top == bottom ? std::vector<Symbol>{bottom} : upper_cells;
          for (Symbol c : cells_read)
            {
              if (r.top != bottom && r.write.empty())
                {
                  StateId to = out.encode_state(r.to, out.exposed_top(c));
                  out.machine.add_rule({from, r.letter, c, to, {}});
                  continue;
                }
              StateId end = out.encode_state(r.to, out.control_top_after(r));
              std::vector<Symbol> cells = out.pushed_cells(r);
              if (cells.empty())
                {
                  out.machine.add_rule({from, r.letter, c, end, {c}});
                  continue;
                }
              StateId next = b.after_push(end, cells, 0);
              out.machine.add_rule({from, r.letter, c, next,
                                    {cells.front(), c}});
            }
        }
      b.flush(upper_cells);
    }
  }

  StateId Normalization::encode_state(StateId q, Symbol top) const
  {
    if (mode == Mode::chain)
      return q;
    return static_cast<StateId>(q * (original_symbols + 1) + top);
  }

  Configuration Normalization::encode(const Configuration& c) const
  {
    if (mode == Mode::chain)
      return c;
    Configuration out;
    out.state = encode_state(c.state, c.top());
    out.stack = {bottom};
    if (c.height() > 1)
      {
        out.stack.push_back(bottom_marker);
        for (std::size_t i = 1; i + 1 < c.stack.size(); ++i)
          out.stack.push_back(c.stack[i]);
      }
    return out;
  }

  std::vector<Symbol> Normalization::pushed_cells(const Rule& r) const
  {
    std::vector<Symbol> cells;
    const std::size_t n = r.write.size();
    if (mode == Mode::chain)
      {
        // write = B1..Bj X with X the preserved top; push Bj first.
        if (n < 2)
          return cells;
        for (std::size_t i = n - 1; i-- > 0;)
          cells.push_back(r.write[i]);
        return cells;
      }
    if (r.top == bottom)
      {
        // write = B1..Bm ⊥: cells marker, Bm, ..., B2; control B1.
        if (n < 2)
          return cells;
        cells.push_back(bottom_marker);
        for (std::size_t i = n - 2; i >= 1; --i)
          cells.push_back(r.write[i]);
        return cells;
      }
    // write = B1..Bn: cells Bn, ..., B2; control B1.
    for (std::size_t i = n; i-- > 1;)
      cells.push_back(r.write[i]);
    return cells;
  }

  Symbol Normalization::control_top_after(const Rule& r) const
  {
    if (r.write.empty())
      throw std::logic_error("control_top_after called on a pop");
    return r.write.front();
  }

  Symbol Normalization::exposed_top(Symbol popped_cell) const
  {
    if (mode == Mode::top_in_control && popped_cell == bottom_marker)
      return bottom;
    return popped_cell;
  }

  Normalization normalize(const PushdownMachine& m, const PriorityFunction& col)
  {
    m.validate();
    Normalization out;
    out.original_states = m.num_states();
    out.original_symbols = m.num_stack_symbols();
    out.identity = is_normal_form(m);
    if (top_preserving(m))
      normalize_chain(m, col, out);
    else
      normalize_top_in_control(m, col, out);
    int maxp = out.col.max_priority();
    out.col.k = std::max(col.k, maxp + 1);
    return out;
  }

  NormalizedGame normalize_game(const GameSpec& g)
  {
    g.validate();
    NormalizedGame ng{g, normalize(g.machine, g.col)};
    ng.game.machine = ng.map.machine;
    ng.game.col = ng.map.col;
    ng.game.owner.clear();
    for (std::size_t s = 0; s < ng.map.machine.num_states(); ++s)
      {
        StateId end = ng.map.chain_end[s];
        auto orig = ng.map.origin.at(end);
        ng.game.owner.push_back(g.owner_of(orig->first));
      }
    return ng;
  }
}
