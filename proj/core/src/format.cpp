#include <pdsynth/format.hpp>

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

namespace pdsynth
{
  VisiblyAlphabet::Kind VisiblyAlphabet::kind_of(Letter a) const
  {
    auto has = [a](const std::vector<Letter>& v) {
      return std::find(v.begin(), v.end(), a) != v.end();
    };
    if (has(calls))
      return Kind::call;
    if (has(returns))
      return Kind::ret;
    if (has(internals))
      return Kind::internal;
    return Kind::none;
  }

  bool VisiblyAlphabet::is_partition_of(std::size_t num_letters) const
  {
    std::vector<int> seen(num_letters, 0);
    for (const auto* part : {&calls, &returns, &internals})
      for (Letter a : *part)
        {
          if (a < 0 || static_cast<std::size_t>(a) >= num_letters)
            return false;
          if (seen[a]++)
            return false;
        }
    return std::all_of(seen.begin(), seen.end(), [](int n) { return n == 1; });
  }

  FormatDescriptor FormatDescriptor::closed() const
  {
    FormatDescriptor f = *this;
    if (f.blind)
      f.one_counter = true;
    if (f.visibly)
      f.realtime = true;
    return f;
  }

  std::string FormatDescriptor::describe() const
  {
    std::vector<std::string> parts;
    if (deterministic)
      parts.emplace_back("deterministic");
    if (realtime)
      parts.emplace_back("realtime");
    if (visibly)
      parts.emplace_back("visibly");
    if (one_counter)
      parts.emplace_back("one-counter");
    if (blind)
      parts.emplace_back("blind");
    if (parts.empty())
      return "general";
    std::string out;
    for (const auto& p : parts)
      out += (out.empty() ? "" : " ") + p;
    return out;
  }

  std::vector<Symbol> used_stack_symbols(const PushdownMachine& m)
  {
    std::set<Symbol> used;
    for (const Rule& r : m.rules)
      {
        if (r.top != bottom)
          used.insert(r.top);
        for (Symbol s : r.write)
          if (s != bottom)
            used.insert(s);
      }
    return {used.begin(), used.end()};
  }

  namespace
  {
    void check_determinism(const PushdownMachine& m, FormatVerdict& v)
    {
      std::map<std::tuple<StateId, Letter, Symbol>, std::vector<std::size_t>>
        groups;
      for (std::size_t i = 0; i < m.rules.size(); ++i)
        {
          const Rule& r = m.rules[i];
          groups[{r.from, r.letter, r.top}].push_back(i);
        }
      for (const auto& [key, idx] : groups)
        {
          auto [q, a, top] = key;
          std::size_t clash = idx.size();
          if (a != epsilon)
            if (auto e = groups.find({q, epsilon, top}); e != groups.end())
              clash += e->second.size();
          if (clash > 1)
            v.violations.push_back(
              {"deterministic", idx.front(),
               "nondeterministic choice at " + m.rule_string(m.rules[idx.front()])});
        }
    }

    void check_blind(const PushdownMachine& m, FormatVerdict& v)
    {
      if (m.num_stack_symbols() != 1)
        return;
      const Symbol a_sym = 1;
      for (std::size_t i = 0; i < m.rules.size(); ++i)
        {
          const Rule& r = m.rules[i];
          if (r.top != bottom)
            continue;
          // r writes A^n ⊥; the same move must exist on A writing A^n A.
          std::vector<Symbol> expected = r.write;
          expected.back() = a_sym;
          bool found = false;
          for (const Rule& s : m.rules)
            if (s.from == r.from && s.letter == r.letter && s.top == a_sym
                && s.to == r.to && s.write == expected)
              found = true;
          if (!found)
            v.violations.push_back(
              {"blind", i,
               "move enabled on empty stack but not on nonempty stack: "
                 + m.rule_string(r)});
        }
    }

    void check_visibly(const PushdownMachine& m, const VisiblyAlphabet& va,
                       FormatVerdict& v)
    {
      if (!va.is_partition_of(m.num_letters()))
        {
          v.violations.push_back(
            {"visibly", std::nullopt,
             "calls/returns/internals do not partition the input alphabet"});
          return;
        }
      using Kind = VisiblyAlphabet::Kind;
      // (state, letter) -> {top -> set of (target, pushed symbol)}
      std::map<std::pair<StateId, Letter>,
               std::map<Symbol, std::set<std::pair<StateId, Symbol>>>>
        by_top;
      for (std::size_t i = 0; i < m.rules.size(); ++i)
        {
          const Rule& r = m.rules[i];
          if (r.letter == epsilon)
            {
              v.violations.push_back({"visibly", i,
                                      "ε-move in a visibly machine: "
                                        + m.rule_string(r)});
              continue;
            }
          Kind k = va.kind_of(r.letter);
          RuleShape sh = shape_of(r);
          switch (k)
            {
            case Kind::call:
              if (sh != RuleShape::push)
                v.violations.push_back(
                  {"visibly", i,
                   "call letter must push one symbol: " + m.rule_string(r)});
              else
                by_top[{r.from, r.letter}][r.top].insert({r.to, r.write[0]});
              break;
            case Kind::ret:
              if (!(sh == RuleShape::pop
                    || (r.top == bottom && sh == RuleShape::skip)))
                v.violations.push_back(
                  {"visibly", i,
                   "return letter must pop (or keep the bottom): "
                     + m.rule_string(r)});
              break;
            case Kind::internal:
              if (sh != RuleShape::skip)
                v.violations.push_back(
                  {"visibly", i,
                   "internal letter must not move the stack: "
                     + m.rule_string(r)});
              else
                by_top[{r.from, r.letter}][r.top].insert({r.to, bottom});
              break;
            case Kind::none:
              break;
            }
        }
      // Calls and internals may not consult the top of the stack.
      const std::size_t ntops = m.symbols.size();
      for (const auto& [key, tops] : by_top)
        {
          bool uniform = tops.size() == ntops;
          for (const auto& [top, targets] : tops)
            if (targets != tops.begin()->second)
              uniform = false;
          if (!uniform)
            {
              std::optional<std::size_t> witness;
              for (std::size_t i = 0; i < m.rules.size(); ++i)
                if (m.rules[i].from == key.first
                    && m.rules[i].letter == key.second)
                  {
                    witness = i;
                    break;
                  }
              v.violations.push_back(
                {"visibly", witness,
                 "move on '" + m.letter_name(key.second) + "' from "
                   + m.states.at(key.first)
                   + " depends on the top of the stack"});
            }
        }
    }
  }

  FormatVerdict check_format(const PushdownMachine& m,
                             const FormatDescriptor& requested)
  {
    FormatDescriptor fmt = requested.closed();
    FormatVerdict v;
    if (fmt.deterministic)
      check_determinism(m, v);
    if (fmt.realtime)
      for (std::size_t i = 0; i < m.rules.size(); ++i)
        if (m.rules[i].letter == epsilon)
          v.violations.push_back({"realtime", i,
                                  "ε-transition " + m.rule_string(m.rules[i])});
    if (fmt.one_counter && m.num_stack_symbols() != 1)
      v.violations.push_back(
        {"one-counter", std::nullopt,
         "stack alphabet size " + std::to_string(m.num_stack_symbols())});
    if (fmt.blind)
      check_blind(m, v);
    if (fmt.visibly)
      check_visibly(m, *fmt.visibly, v);
    return v;
  }
}
