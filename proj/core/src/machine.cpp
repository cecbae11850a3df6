#include <pdsynth/machine.hpp>

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace pdsynth
{
  std::string to_string(Player p)
  {
    return p == Player::zero ? "Player0" : "Player1";
  }

  RuleShape shape_of(const Rule& r)
  {
    if (r.top == bottom)
      {
        if (r.write.size() == 1)
          return RuleShape::skip;
        if (r.write.size() == 2)
          return RuleShape::push;
        return RuleShape::other;
      }
    if (r.write.empty())
      return RuleShape::pop;
    if (r.write.back() != r.top)
      return RuleShape::other;
    if (r.write.size() == 1)
      return RuleShape::skip;
    if (r.write.size() == 2)
      return RuleShape::push;
    return RuleShape::other;
  }

  StateId PushdownMachine::add_state(std::string name)
  {
    states.push_back(std::move(name));
    return static_cast<StateId>(states.size() - 1);
  }

  Letter PushdownMachine::add_letter(std::string name)
  {
    letters.push_back(std::move(name));
    return static_cast<Letter>(letters.size() - 1);
  }

  Symbol PushdownMachine::add_symbol(std::string name)
  {
    symbols.push_back(std::move(name));
    return static_cast<Symbol>(symbols.size() - 1);
  }

  void PushdownMachine::add_rule(Rule r)
  {
    rules.push_back(std::move(r));
  }

  namespace
  {
    template<class V>
    std::optional<int> find_name(const V& names, std::string_view n)
    {
      auto it = std::find(names.begin(), names.end(), n);
      if (it == names.end())
        return std::nullopt;
      return static_cast<int>(it - names.begin());
    }
  }

  std::optional<StateId> PushdownMachine::find_state(std::string_view n) const
  {
    return find_name(states, n);
  }

  std::optional<Letter> PushdownMachine::find_letter(std::string_view n) const
  {
    return find_name(letters, n);
  }

  std::optional<Symbol> PushdownMachine::find_symbol(std::string_view n) const
  {
    return find_name(symbols, n);
  }

  void PushdownMachine::validate() const
  {
    if (symbols.empty())
      throw std::invalid_argument("machine has no bottom symbol");
    if (states.empty())
      throw std::invalid_argument("machine has no states");
    if (initial < 0 || static_cast<std::size_t>(initial) >= states.size())
      throw std::invalid_argument("initial state is not declared");
    const int nsym = static_cast<int>(symbols.size());
    const int nst = static_cast<int>(states.size());
    const int nlet = static_cast<int>(letters.size());
    for (std::size_t i = 0; i < rules.size(); ++i)
      {
        const Rule& r = rules[i];
        auto fail = [&](const std::string& why) {
          throw std::invalid_argument("rule " + std::to_string(i) + ": "
                                      + why);
        };
        if (r.from < 0 || r.from >= nst || r.to < 0 || r.to >= nst)
          fail("undeclared state");
        if (r.letter != epsilon && (r.letter < 0 || r.letter >= nlet))
          fail("undeclared input letter");
        if (r.top < 0 || r.top >= nsym)
          fail("undeclared stack symbol");
        for (Symbol s : r.write)
          if (s < 0 || s >= nsym)
            fail("undeclared stack symbol in written word");
        if (r.top == bottom)
          {
            if (r.write.empty() || r.write.back() != bottom
                || std::count(r.write.begin(), r.write.end(), bottom) != 1)
              fail("a rule on the bottom symbol must write a word ending in "
                   "the bottom symbol exactly once");
          }
        else if (std::count(r.write.begin(), r.write.end(), bottom) != 0)
          fail("the bottom symbol cannot be written above the bottom");
      }
  }

  bool PushdownMachine::is_deterministic() const
  {
    std::map<std::tuple<StateId, Letter, Symbol>, int> count;
    for (const Rule& r : rules)
      ++count[{r.from, r.letter, r.top}];
    for (const auto& [key, n] : count)
      {
        auto [q, a, top] = key;
        if (n > 1)
          return false;
        if (a != epsilon)
          {
            auto eps = count.find({q, epsilon, top});
            if (eps != count.end() && eps->second > 0)
              return false;
          }
      }
    return true;
  }

  std::vector<std::size_t> PushdownMachine::rules_for(StateId q,
                                                      Symbol top) const
  {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < rules.size(); ++i)
      if (rules[i].from == q && rules[i].top == top)
        out.push_back(i);
    return out;
  }

  Configuration PushdownMachine::apply(const Configuration& c,
                                       const Rule& r) const
  {
    Configuration next{r.to, c.stack};
    next.stack.pop_back();
    for (auto it = r.write.rbegin(); it != r.write.rend(); ++it)
      next.stack.push_back(*it);
    return next;
  }

  std::string PushdownMachine::letter_name(Letter a) const
  {
    if (a == epsilon)
      return "~";
    return letters.at(a);
  }

  std::string PushdownMachine::symbol_name(Symbol s) const
  {
    return symbols.at(s);
  }

  std::string PushdownMachine::rule_string(const Rule& r) const
  {
    std::ostringstream os;
    os << "δ(" << states.at(r.from) << ',' << letter_name(r.letter) << ','
       << symbol_name(r.top) << ")=(" << states.at(r.to) << ',';
    if (r.write.empty())
      os << "ε";
    for (Symbol s : r.write)
      os << symbol_name(s);
    os << ')';
    return os.str();
  }

  std::string PushdownMachine::config_string(const Configuration& c) const
  {
    std::ostringstream os;
    os << '(' << states.at(c.state) << ',';
    for (auto it = c.stack.rbegin(); it != c.stack.rend(); ++it)
      os << symbol_name(*it);
    os << ')';
    return os.str();
  }

  int PriorityFunction::max_priority() const
  {
    if (priority.empty())
      return 0;
    return *std::max_element(priority.begin(), priority.end());
  }
}
