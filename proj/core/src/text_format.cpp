#include <pdsynth/text_format.hpp>

#include <fstream>
#include <map>
#include <sstream>

namespace pdsynth
{
  ParseError::ParseError(std::size_t line, const std::string& msg)
    : std::runtime_error("line " + std::to_string(line) + ": " + msg),
      line_(line)
  {
  }

  namespace
  {
    using Tokens = std::vector<std::string>;

    Tokens tokenize(std::string_view line)
    {
      if (auto h = line.find('#'); h != std::string_view::npos)
        line = line.substr(0, h);
      Tokens out;
      std::istringstream is{std::string(line)};
      for (std::string t; is >> t;)
        out.push_back(t);
      return out;
    }

    bool reserved(const std::string& t)
    {
      return t == "~" || t == "_" || t == "*" || t == "->" || t == ";";
    }

    struct Parsed
    {
      GameSpec game;
      std::optional<Player> strategy_player;
      std::vector<Letter> output;
    };

    class Parser
    {
    public:
      explicit Parser(bool strategy) : strategy_(strategy) {}

      Parsed run(std::string_view text)
      {
        std::size_t pos = 0;
        while (pos <= text.size())
          {
            std::size_t end = text.find('\n', pos);
            if (end == std::string_view::npos)
              end = text.size();
            ++line_;
            Tokens t = tokenize(text.substr(pos, end - pos));
            if (!t.empty())
              in_rules_ ? rule_line(t) : header_line(t);
            pos = end + 1;
          }
        finish();
        return std::move(out_);
      }

    private:
      [[noreturn]] void fail(const std::string& msg) const
      {
        throw ParseError(line_, msg);
      }

      PushdownMachine& m() { return out_.game.machine; }

      void declare_names(const Tokens& t, std::vector<std::string>& seen,
                         const char* what)
      {
        for (std::size_t i = 1; i < t.size(); ++i)
          {
            if (reserved(t[i]))
              fail(std::string("reserved token '") + t[i] + "' used as "
                   + what + " name");
            for (const auto& s : seen)
              if (s == t[i])
                fail(std::string("duplicate ") + what + " '" + t[i] + "'");
            seen.push_back(t[i]);
          }
      }

      StateId state(const std::string& n) const
      {
        auto q = out_.game.machine.find_state(n);
        if (!q)
          fail("unknown state '" + n + "'");
        return *q;
      }
      Letter letter(const std::string& n) const
      {
        if (n == "~")
          return epsilon;
        auto a = out_.game.machine.find_letter(n);
        if (!a)
          fail("unknown input letter '" + n + "'");
        return *a;
      }
      Symbol symbol(const std::string& n) const
      {
        if (n == "_")
          return bottom;
        auto s = out_.game.machine.find_symbol(n);
        if (!s || *s == bottom)
          fail("unknown stack symbol '" + n + "'");
        return *s;
      }
      int number(const std::string& s) const
      {
        try
          {
            std::size_t used = 0;
            int v = std::stoi(s, &used);
            if (used != s.size())
              throw std::invalid_argument(s);
            return v;
          }
        catch (const std::exception&)
          {
            fail("expected an integer, got '" + s + "'");
          }
      }

      void header_line(const Tokens& t)
      {
        const std::string& kw = t[0];
        auto once = [&](bool& flag) {
          if (flag)
            fail("duplicate '" + kw + "' line");
          flag = true;
        };
        if (kw == "strategy")
          {
            if (!strategy_)
              fail("strategy header in a game file");
            if (t.size() != 2 || (t[1] != "Player0" && t[1] != "Player1"))
              fail("expected 'strategy Player0' or 'strategy Player1'");
            out_.strategy_player
              = t[1] == "Player0" ? Player::zero : Player::one;
          }
        else if (kw == "name")
          {
            if (t.size() != 2)
              fail("expected 'name <identifier>'");
            out_.game.name = t[1];
          }
        else if (kw == "condition")
          {
            if (t.size() != 2 || (t[1] != "parity" && t[1] != "stair"))
              fail("expected 'condition parity' or 'condition stair'");
            out_.game.condition
              = t[1] == "parity" ? Condition::parity : Condition::stair;
          }
        else if (kw == "format")
          {
            auto& f = out_.game.format;
            for (std::size_t i = 1; i < t.size(); ++i)
              {
                if (t[i] == "deterministic")
                  f.deterministic = true;
                else if (t[i] == "realtime")
                  f.realtime = true;
                else if (t[i] == "one-counter")
                  f.one_counter = true;
                else if (t[i] == "blind")
                  f.blind = true;
                else
                  fail("unknown format flag '" + t[i] + "'");
              }
          }
        else if (kw == "visibly")
          visibly_ = t;
        else if (kw == "input")
          {
            once(have_input_);
            std::vector<std::string> seen;
            declare_names(t, seen, "letter");
            for (auto& s : seen)
              m().add_letter(s);
          }
        else if (kw == "stack")
          {
            once(have_stack_);
            std::vector<std::string> seen;
            declare_names(t, seen, "stack symbol");
            for (auto& s : seen)
              m().add_symbol(s);
          }
        else if (kw == "states")
          {
            once(have_states_);
            if (t.size() < 2)
              fail("states section is empty");
            std::vector<std::string> seen;
            declare_names(t, seen, "state");
            for (auto& s : seen)
              m().add_state(s);
            owner_.assign(seen.size(), std::nullopt);
            color_.assign(seen.size(), std::nullopt);
          }
        else if (kw == "init")
          {
            if (t.size() != 2)
              fail("expected 'init <state>'");
            need_states();
            m().initial = state(t[1]);
            have_init_ = true;
          }
        else if (kw == "player0" || kw == "player1")
          {
            if (strategy_)
              fail("owner lines are not allowed in a strategy file");
            need_states();
            Player p = kw == "player0" ? Player::zero : Player::one;
            for (std::size_t i = 1; i < t.size(); ++i)
              {
                StateId q = state(t[i]);
                if (owner_[q] && *owner_[q] != p)
                  fail("state '" + t[i] + "' owned by both players");
                owner_[q] = p;
              }
          }
        else if (kw == "priorities")
          {
            if (t.size() != 2)
              fail("expected 'priorities <k>'");
            k_ = number(t[1]);
            if (*k_ < 1)
              fail("priority bound must be positive");
          }
        else if (kw == "color")
          {
            if (strategy_)
              fail("color lines are not allowed in a strategy file");
            need_states();
            if (t.size() % 2 != 1)
              fail("expected 'color <state> <priority> ...'");
            for (std::size_t i = 1; i < t.size(); i += 2)
              {
                StateId q = state(t[i]);
                int p = number(t[i + 1]);
                if (p < 0)
                  fail("negative priority");
                color_[q] = p;
              }
          }
        else if (kw == "rules")
          {
            if (t.size() != 1)
              fail("unexpected tokens after 'rules'");
            need_states();
            resolve_visibly();
            in_rules_ = true;
          }
        else
          fail("unknown keyword '" + kw + "'");
      }

      void need_states() const
      {
        if (!have_states_)
          fail("states must be declared first");
      }

      void resolve_visibly()
      {
        if (!visibly_)
          return;
        const Tokens& t = *visibly_;
        VisiblyAlphabet v;
        std::vector<Letter>* cur = nullptr;
        bool seen[3] = {false, false, false};
        for (std::size_t i = 1; i < t.size(); ++i)
          {
            const std::string& w = t[i];
            if (w == "calls" || w == "returns" || w == "internals")
              {
                int idx = w == "calls" ? 0 : w == "returns" ? 1 : 2;
                if (seen[idx])
                  fail("duplicate '" + w + "' in visibly partition");
                seen[idx] = true;
                cur = idx == 0 ? &v.calls : idx == 1 ? &v.returns : &v.internals;
              }
            else if (w == ";")
              cur = nullptr;
            else
              {
                if (!cur)
                  fail("letter '" + w + "' outside calls/returns/internals");
                Letter a = letter(w);
                if (a == epsilon)
                  fail("ε cannot be in a visibly partition");
                cur->push_back(a);
              }
          }
        if (!v.is_partition_of(m().num_letters()))
          fail("visibly partition does not cover the input alphabet exactly");
        out_.game.format.visibly = v;
      }

      void rule_line(const Tokens& t)
      {
        // q a T -> q' ACTION [args] [out x]
        std::size_t n = t.size();
        std::optional<Letter> out;
        if (strategy_)
          {
            if (n < 2 || t[n - 2] != "out")
              fail("strategy rule must end with 'out <letter>'");
            out = letter(t[n - 1]);
            n -= 2;
          }
        if (n < 5 || t[3] != "->")
          fail("expected '<state> <letter> <top> -> <state> <action>'");
        StateId from = state(t[0]);
        Letter a = letter(t[1]);
        StateId to = state(t[4]);
        if (n < 6)
          fail("missing action");
        const std::string& act = t[5];
        std::vector<Symbol> word;
        for (std::size_t i = 6; i < n; ++i)
          {
            Symbol s = symbol(t[i]);
            if (s == bottom)
              fail("⊥ cannot be written");
            word.push_back(s);
          }
        bool any = t[2] == "*";
        std::vector<Symbol> tops;
        if (any)
          for (std::size_t s = 0; s < m().symbols.size(); ++s)
            tops.push_back(static_cast<Symbol>(s));
        else
          tops.push_back(symbol(t[2]));

        for (Symbol top : tops)
          {
            std::vector<Symbol> write;
            if (act == "push")
              {
                if (word.empty())
                  fail("push needs at least one symbol");
                write = word;
                write.push_back(top);
              }
            else if (act == "pop" || act == "skip")
              {
                if (!word.empty())
                  fail("'" + act + "' takes no arguments");
                if (act == "pop")
                  {
                    if (top == bottom)
                      fail(any ? "pop cannot use '*' (⊥ is persistent)"
                               : "cannot pop ⊥");
                  }
                else
                  write = {top};
              }
            else if (act == "rewrite")
              {
                if (word.empty())
                  fail("rewrite needs at least one symbol");
                if (top == bottom)
                  fail(any ? "rewrite cannot use '*' (⊥ is persistent)"
                           : "cannot rewrite ⊥");
                write = word;
              }
            else
              fail("unknown action '" + act + "'");
            m().add_rule({from, a, top, to, std::move(write)});
            if (out)
              out_.output.push_back(*out);
          }
      }

      void finish()
      {
        if (!have_states_)
          fail("missing states section");
        if (!in_rules_)
          resolve_visibly();
        if (!have_init_)
          m().initial = 0;
        if (strategy_)
          {
            if (!out_.strategy_player)
              fail("missing 'strategy Player0|Player1' header");
            return;
          }
        GameSpec& g = out_.game;
        int maxp = 0;
        for (std::size_t q = 0; q < color_.size(); ++q)
          {
            if (!owner_[q])
              fail("state '" + g.machine.states[q] + "' has no owner");
            if (!color_[q])
              fail("state '" + g.machine.states[q] + "' has no color");
            g.owner.push_back(*owner_[q]);
            g.col.priority.push_back(*color_[q]);
            maxp = std::max(maxp, *color_[q]);
          }
        g.col.k = k_ ? *k_ : maxp + 1;
        try
          {
            g.validate();
          }
        catch (const std::invalid_argument& e)
          {
            fail(e.what());
          }
      }

      bool strategy_;
      std::size_t line_ = 0;
      bool in_rules_ = false;
      bool have_input_ = false, have_stack_ = false, have_states_ = false;
      bool have_init_ = false;
      std::optional<Tokens> visibly_;
      std::vector<std::optional<Player>> owner_;
      std::vector<std::optional<int>> color_;
      std::optional<int> k_;
      Parsed out_;
    };

    void print_header(std::ostream& os, const std::string& name,
                      const PushdownMachine& m, const FormatDescriptor& f)
    {
      if (!name.empty())
        os << "name " << name << '\n';
      std::string flags;
      if (f.deterministic)
        flags += " deterministic";
      if (f.realtime)
        flags += " realtime";
      if (f.one_counter)
        flags += " one-counter";
      if (f.blind)
        flags += " blind";
      if (!flags.empty())
        os << "format" << flags << '\n';
      if (f.visibly)
        {
          auto list = [&](const std::vector<Letter>& ls) {
            for (Letter a : ls)
              os << ' ' << m.letters.at(a);
          };
          os << "visibly calls";
          list(f.visibly->calls);
          os << " ; returns";
          list(f.visibly->returns);
          os << " ; internals";
          list(f.visibly->internals);
          os << '\n';
        }
      os << "input";
      for (const auto& a : m.letters)
        os << ' ' << a;
      os << "\nstack";
      for (std::size_t s = 1; s < m.symbols.size(); ++s)
        os << ' ' << m.symbols[s];
      os << "\nstates";
      for (const auto& q : m.states)
        os << ' ' << q;
      os << "\ninit " << m.states.at(m.initial) << '\n';
    }

    void print_rule(std::ostream& os, const PushdownMachine& m, const Rule& r)
    {
      os << m.states.at(r.from) << ' '
         << (r.letter == epsilon ? "~" : m.letters.at(r.letter)) << ' '
         << m.symbols.at(r.top) << " -> " << m.states.at(r.to);
      const auto& w = r.write;
      if (w.empty())
        os << " pop";
      else if (w.size() == 1 && w[0] == r.top)
        os << " skip";
      else if (w.size() > 1 && w.back() == r.top)
        {
          os << " push";
          for (std::size_t i = 0; i + 1 < w.size(); ++i)
            os << ' ' << m.symbols.at(w[i]);
        }
      else
        {
          os << " rewrite";
          for (Symbol s : w)
            os << ' ' << m.symbols.at(s);
        }
    }

    std::string read_file(const std::string& path)
    {
      std::ifstream in(path);
      if (!in)
        throw std::runtime_error("cannot open '" + path + "'");
      std::ostringstream ss;
      ss << in.rdbuf();
      return ss.str();
    }
  }

  GameSpec parse_game(std::string_view text)
  {
    return Parser(false).run(text).game;
  }

  std::string print_game(const GameSpec& g)
  {
    std::ostringstream os;
    const auto& m = g.machine;
    print_header(os, g.name, m, g.format);
    os << "condition " << to_string(g.condition) << '\n';
    for (Player p : {Player::zero, Player::one})
      {
        os << (p == Player::zero ? "player0" : "player1");
        for (std::size_t q = 0; q < m.num_states(); ++q)
          if (g.owner.at(q) == p)
            os << ' ' << m.states[q];
        os << '\n';
      }
    os << "priorities " << g.col.k << "\ncolor";
    for (std::size_t q = 0; q < m.num_states(); ++q)
      os << ' ' << m.states[q] << ' ' << g.col.priority.at(q);
    os << "\nrules\n";
    for (const Rule& r : m.rules)
      {
        print_rule(os, m, r);
        os << '\n';
      }
    return os.str();
  }

  StrategyPDA parse_strategy(std::string_view text)
  {
    Parsed p = Parser(true).run(text);
    StrategyPDA s;
    s.name = p.game.name;
    s.machine = std::move(p.game.machine);
    s.output = std::move(p.output);
    s.player = *p.strategy_player;
    s.format = p.game.format;
    try
      {
        s.validate();
      }
    catch (const std::invalid_argument& e)
      {
        throw ParseError(0, e.what());
      }
    return s;
  }

  std::string print_strategy(const StrategyPDA& s)
  {
    std::ostringstream os;
    os << "strategy " << to_string(s.player) << '\n';
    print_header(os, s.name, s.machine, s.format);
    os << "rules\n";
    for (std::size_t i = 0; i < s.machine.rules.size(); ++i)
      {
        print_rule(os, s.machine, s.machine.rules[i]);
        Letter o = s.output.at(i);
        os << " out " << (o == epsilon ? "~" : s.machine.letters.at(o))
           << '\n';
      }
    return os.str();
  }

  GameSpec load_game(const std::string& path)
  {
    return parse_game(read_file(path));
  }

  StrategyPDA load_strategy(const std::string& path)
  {
    return parse_strategy(read_file(path));
  }

  void save_text(const std::string& path, const std::string& text)
  {
    std::ofstream out(path);
    if (!out)
      throw std::runtime_error("cannot write '" + path + "'");
    out << text;
  }
}
