#include "cli.hpp"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include <pdsynth/dot.hpp>
#include <pdsynth/extract.hpp>
#include <pdsynth/format.hpp>
#include <pdsynth/normalize.hpp>
#include <pdsynth/oracle.hpp>
#include <pdsynth/search.hpp>
#include <pdsynth/simulate.hpp>
#include <pdsynth/stair_conversion.hpp>
#include <pdsynth/text_format.hpp>
#include <pdsynth/validate.hpp>

namespace pdsynth::cli
{
  namespace
  {
    using json = nlohmann::ordered_json;

    struct UsageError : std::runtime_error
    {
      using std::runtime_error::runtime_error;
    };

    std::vector<std::string> split(const std::string& s, const char* seps)
    {
      std::vector<std::string> out;
      std::string cur;
      for (char c : s)
        {
          if (std::strchr(seps, c))
            {
              if (!cur.empty())
                out.push_back(cur);
              cur.clear();
            }
          else
            cur += c;
        }
      if (!cur.empty())
        out.push_back(cur);
      return out;
    }

    SearchCaps default_caps()
    {
      SearchCaps caps;
      const char* env = std::getenv(caps_env);
      if (!env || !*env)
        return caps;
      auto parts = split(env, ",");
      if (parts.size() != 3)
        throw UsageError(std::string(caps_env)
                         + " must be 'max-classes,max-prefix,max-period'");
      try
        {
          caps.max_classes = std::stoul(parts[0]);
          caps.max_prefix = std::stoul(parts[1]);
          caps.max_period = std::stoul(parts[2]);
        }
      catch (const std::exception&)
        {
          throw UsageError(std::string(caps_env) + " holds a non-number");
        }
      return caps;
    }

    /// "realtime", "visibly+one-counter", ...  Strategies are always
    /// deterministic.
    FormatDescriptor parse_format(const std::string& spec, const GameSpec& g)
    {
      FormatDescriptor f;
      f.deterministic = true;
      for (const auto& t : split(spec, "+,"))
        {
          if (t == "general" || t == "deterministic")
            continue;
          if (t == "realtime")
            f.realtime = true;
          else if (t == "one-counter")
            f.one_counter = true;
          else if (t == "blind")
            f.blind = true;
          else if (t == "visibly")
            {
              if (!g.format.visibly)
                throw UsageError("format 'visibly' needs a game with a "
                                 "visibly partition");
              f.visibly = g.format.visibly;
            }
          else
            throw UsageError("unknown format '" + t + "'");
        }
      return f;
    }

    bool is_strategy_file(const std::string& path)
    {
      std::ifstream in(path);
      for (std::string line; std::getline(in, line);)
        {
          std::istringstream is(line.substr(0, line.find('#')));
          std::string w;
          if (is >> w)
            return w == "strategy";
        }
      return false;
    }

    std::string strategy_path_for(const std::string& result)
    {
      auto dot = result.rfind('.');
      auto slash = result.rfind('/');
      std::string stem = (dot != std::string::npos
                          && (slash == std::string::npos || dot > slash))
                           ? result.substr(0, dot)
                           : result;
      return stem + ".strategy";
    }

    json stats_json(const SearchStats& s)
    {
      return {{"steps", s.steps},
              {"candidates", s.candidates},
              {"pruned", s.pruned},
              {"level", s.level}};
    }

    json candidate_json(const SolveResult& r)
    {
      const RegularCandidate& c = r.witness;
      const auto& m = r.witness_game.machine;
      json classes = json::array();
      for (std::size_t p = 0; p < c.num_classes(); ++p)
        {
          json next = json::object();
          for (std::size_t a = 0; a < c.next[p].size(); ++a)
            next[m.symbol_name(static_cast<Symbol>(a + 1))] = c.next[p][a];
          json choices = json::array();
          for (const auto& e : c.strategy[p])
            choices.push_back(r.automaton.names.at(e.state) + " "
                              + to_string(r.automaton,
                                          Atom{e.letter, e.dir, e.target}, m));
          classes.push_back({{"id", p},
                             {"label", m.symbol_name(c.label[p])},
                             {"inert", static_cast<bool>(c.inert[p])},
                             {"next", next},
                             {"strategy", choices}});
        }
      json lasso = nullptr;
      if (c.lasso)
        lasso = {{"prefix", c.lasso->first}, {"period", c.lasso->second}};
      return {{"classes", c.num_classes()},
              {"real_classes", c.real_classes()},
              {"root", c.root},
              {"lasso", lasso},
              {"class_list", classes}};
    }

    struct Common
    {
      std::string game;
      std::size_t max_classes = 0, max_prefix = 0, max_period = 0;
      std::string format;
    };

    void add_caps(CLI::App* sub, Common& c)
    {
      sub->add_option("--max-classes", c.max_classes,
                      "class cap of the candidate search");
      sub->add_option("--max-prefix", c.max_prefix, "lasso prefix cap");
      sub->add_option("--max-period", c.max_period, "lasso period cap");
      sub->add_option("--format-strategy", c.format,
                      "strategy format, e.g. realtime or visibly+one-counter");
    }

    SearchCaps caps_of(const Common& c)
    {
      SearchCaps caps = default_caps();
      if (c.max_classes)
        caps.max_classes = c.max_classes;
      if (c.max_prefix)
        caps.max_prefix = c.max_prefix;
      if (c.max_period)
        caps.max_period = c.max_period;
      return caps;
    }

    struct Synthesis
    {
      SolveResult result;
      std::optional<StrategyPDA> strategy;
      FormatDescriptor format;
    };

    Synthesis synthesize(const GameSpec& g, const Common& c)
    {
      Synthesis s;
      SearchCaps caps = caps_of(c);
      if (c.format.empty())
        {
          s.format.deterministic = true;
          s.result = solve(g, caps);
          if (s.result.winner)
            s.strategy = strategy_for_game(s.result);
        }
      else
        {
          s.format = parse_format(c.format, g);
          s.result = solve_in_format(g, caps, s.format, &s.strategy);
        }
      return s;
    }

    void print_summary(std::ostream& out, const Synthesis& s)
    {
      const SolveResult& r = s.result;
      out << "status: " << to_string(r.status) << '\n';
      if (r.winner)
        out << "winner: " << to_string(*r.winner) << '\n';
      out << "caps: max-classes " << r.caps.max_classes << ", max-prefix "
          << r.caps.max_prefix << ", max-period " << r.caps.max_period << '\n';
      out << "search: " << r.stats0.steps + r.stats1.steps << " steps, "
          << r.stats0.candidates + r.stats1.candidates << " candidates, "
          << r.seconds << " s\n";
      if (!r.message.empty())
        out << "note: " << r.message << '\n';
    }

    int status_exit(const SolveResult& r)
    {
      return r.winner ? ok : unknown_at_cap;
    }

    std::unique_ptr<Agent> make_adversary(const std::string& spec,
                                          const std::vector<std::string>& script,
                                          const GameSpec& g,
                                          std::uint64_t seed, std::istream& in,
                                          std::ostream& out)
    {
      if (spec == "interactive")
        return std::make_unique<InteractiveAgent>(in, out);
      if (spec == "random")
        return std::make_unique<RandomAgent>(seed);
      if (spec.rfind("random:", 0) == 0)
        {
          try
            {
              return std::make_unique<RandomAgent>(
                std::stoull(spec.substr(7)));
            }
          catch (const std::exception&)
            {
              throw UsageError("bad seed in '" + spec + "'");
            }
        }
      if (spec == "scripted")
        {
          std::vector<Letter> letters;
          for (const auto& w : script)
            for (const auto& t : split(w, ","))
              {
                auto a = g.machine.find_letter(t);
                if (!a)
                  throw UsageError("unknown letter '" + t + "' in script");
                letters.push_back(*a);
              }
          return std::make_unique<ScriptedAgent>(std::move(letters));
        }
      throw UsageError("adversary must be scripted, random[:SEED] or "
                       "interactive");
    }

    void emit(std::ostream& out, const std::string& path,
              const std::string& text)
    {
      if (path.empty() || path == "-")
        out << text;
      else
        save_text(path, text);
    }
  }

  int run_command(int argc, const char* const* argv, std::istream& in,
                  std::ostream& out, std::ostream& err)
  {
    CLI::App app{"Pushdown game solver and strategy synthesizer", "pdsynth"};
    app.require_subcommand(1);
    std::uint64_t seed = 0;
    app.add_option("--seed", seed, "seed for randomized subcommands");

    Common common;

    // check-format
    auto* check = app.add_subcommand("check-format",
                                     "check a game or strategy file against a "
                                     "format");
    std::string check_format_arg;
    check->add_option("file", common.game)->required();
    check->add_option("--format", check_format_arg,
                      "format to check (default: the declared one)");

    // normalize
    auto* norm = app.add_subcommand("normalize", "print the normal-form game");
    std::string output;
    norm->add_option("file", common.game)->required();
    norm->add_option("-o,--output", output, "output file");

    // solve
    auto* solve_cmd = app.add_subcommand("solve", "decide the winner");
    std::string result_path, strategy_out;
    bool print_json = false;
    solve_cmd->add_option("file", common.game)->required();
    add_caps(solve_cmd, common);
    solve_cmd->add_option("--result", result_path,
                          "write the result document (JSON) here");
    solve_cmd->add_option("--strategy", strategy_out,
                          "strategy file referenced by the result document");
    solve_cmd->add_flag("--json", print_json,
                        "print the result document on stdout");

    // synthesize
    auto* synth = app.add_subcommand("synthesize",
                                     "write a winning strategy for the winner");
    synth->add_option("file", common.game)->required();
    add_caps(synth, common);
    synth->add_option("-o,--output", output, "strategy file");

    // simulate
    auto* sim = app.add_subcommand("simulate",
                                   "play the winner's strategy against an "
                                   "adversary");
    std::string adversary = "random";
    std::vector<std::string> script;
    std::string strategy_in;
    std::size_t depth = 200, height = 1000;
    sim->add_option("file", common.game)->required();
    add_caps(sim, common);
    sim->add_option("--adversary", adversary,
                    "scripted, random, random:SEED or interactive");
    sim->add_option("--script", script, "letters for the scripted adversary");
    sim->add_option("--strategy", strategy_in,
                    "strategy file (default: synthesize one)");
    sim->add_option("--depth", depth, "maximal number of moves");
    sim->add_option("--height", height, "maximal stack height");

    // play
    auto* play = app.add_subcommand("play",
                                    "play interactively against the "
                                    "synthesized strategy");
    std::string as = "player1";
    play->add_option("file", common.game)->required();
    add_caps(play, common);
    play->add_option("--as", as, "player0 or player1")
      ->check(CLI::IsMember({"player0", "player1"}));
    play->add_option("--depth", depth, "maximal number of moves");

    // verify
    auto* verify = app.add_subcommand("verify",
                                      "validate a strategy or cross-check the "
                                      "solver");
    std::size_t oracle_cap = 0;
    ValidationBounds vb;
    verify->add_option("file", common.game)->required();
    add_caps(verify, common);
    verify->add_option("--strategy", strategy_in, "strategy file to validate");
    verify->add_option("--oracle-cap", oracle_cap,
                       "compare with the finite-arena solver at this height");
    verify->add_option("--depth", vb.depth, "exploration depth");
    verify->add_option("--height", vb.height, "exploration height");

    // convert stair
    auto* convert = app.add_subcommand("convert", "game conversions");
    convert->require_subcommand(1);
    auto* stair = convert->add_subcommand("stair",
                                          "parity to stair parity arena");
    stair->add_option("file", common.game)->required();
    stair->add_option("-o,--output", output, "output file");

    // export-dot
    auto* dot = app.add_subcommand("export-dot", "Graphviz export");
    std::size_t cap = 3;
    bool trace = false;
    dot->add_option("file", common.game, "game or strategy file")->required();
    add_caps(dot, common);
    dot->add_option("--cap", cap, "height cap of the arena");
    dot->add_flag("--trace", trace, "export the witness trace graph");
    dot->add_option("-o,--output", output, "output file");

    try
      {
        app.parse(argc, argv);
      }
    catch (const CLI::ParseError& e)
      {
        int code = app.exit(e, out, err);
        return code == 0 ? ok : usage;
      }

    try
      {
        if (*check)
          {
            FormatVerdict v;
            if (is_strategy_file(common.game))
              {
                StrategyPDA s = load_strategy(common.game);
                FormatDescriptor f = s.format;
                if (!check_format_arg.empty())
                  {
                    GameSpec dummy;
                    dummy.format.visibly = s.format.visibly;
                    f = parse_format(check_format_arg, dummy);
                  }
                out << "format: " << f.describe() << '\n';
                v = check_strategy_format(s, f);
                for (const auto& x : v.violations)
                  out << "violation [" << x.property << "] " << x.message
                      << '\n';
              }
            else
              {
                GameSpec g = load_game(common.game);
                FormatDescriptor f = g.format;
                if (!check_format_arg.empty())
                  {
                    f = parse_format(check_format_arg, g);
                    f.deterministic = check_format_arg.find("deterministic")
                                      != std::string::npos;
                  }
                out << "format: " << f.describe() << '\n';
                v = check_format(g.machine, f);
                for (const auto& x : v.violations)
                  out << "violation [" << x.property << "] " << x.message
                      << '\n';
              }
            out << (v.ok() ? "ok" : "violated") << '\n';
            return v.ok() ? ok : failure;
          }

        if (*norm)
          {
            GameSpec g = load_game(common.game);
            NormalizedGame n = normalize_game(g);
            std::ostringstream os;
            os << "# normalization: "
               << (n.map.identity ? "identity"
                   : n.map.mode == Normalization::Mode::chain
                     ? "push chains"
                     : "top in control")
               << '\n'
               << print_game(n.game);
            emit(out, output, os.str());
            return ok;
          }

        if (*solve_cmd)
          {
            GameSpec g = load_game(common.game);
            Synthesis s = synthesize(g, common);
            json doc;
            doc["status"] = to_string(s.result.status);
            doc["winner"] = s.result.winner
                              ? json(to_string(*s.result.winner))
                              : json(nullptr);
            doc["game"] = common.game;
            doc["format"] = s.format.describe();
            doc["caps"] = {{"max_classes", s.result.caps.max_classes},
                           {"max_prefix", s.result.caps.max_prefix},
                           {"max_period", s.result.caps.max_period}};
            doc["candidate"] = s.result.winner ? candidate_json(s.result)
                                               : json(nullptr);
            doc["strategy_file"] = nullptr;
            if (s.strategy && (!result_path.empty() || !strategy_out.empty()))
              {
                std::string sp = strategy_out.empty()
                                   ? strategy_path_for(result_path)
                                   : strategy_out;
                save_text(sp, print_strategy(*s.strategy));
                doc["strategy_file"] = sp;
              }
            doc["timings"] = {{"seconds", s.result.seconds}};
            doc["search"] = {{"player0", stats_json(s.result.stats0)},
                             {"player1", stats_json(s.result.stats1)}};
            doc["message"] = s.result.message;
            if (!result_path.empty())
              save_text(result_path, doc.dump(2) + "\n");
            if (print_json)
              out << doc.dump(2) << '\n';
            else
              print_summary(out, s);
            if (s.result.winner && !s.strategy)
              {
                err << "no strategy of the requested format was extracted\n";
                return unknown_at_cap;
              }
            return status_exit(s.result);
          }

        if (*synth)
          {
            GameSpec g = load_game(common.game);
            Synthesis s = synthesize(g, common);
            if (!s.strategy)
              {
                print_summary(err, s);
                return unknown_at_cap;
              }
            emit(out, output, print_strategy(*s.strategy));
            return ok;
          }

        if (*sim)
          {
            GameSpec g = load_game(common.game);
            StrategyPDA strat;
            if (!strategy_in.empty())
              strat = load_strategy(strategy_in);
            else
              {
                Synthesis s = synthesize(g, common);
                if (!s.strategy)
                  {
                    print_summary(err, s);
                    return unknown_at_cap;
                  }
                strat = *s.strategy;
              }
            StrategyAgent protagonist(strat);
            auto adv = make_adversary(adversary, script, g, seed, in, out);
            Agent& p0 = strat.player == Player::zero
                          ? static_cast<Agent&>(protagonist)
                          : *adv;
            Agent& p1 = strat.player == Player::zero
                          ? *adv
                          : static_cast<Agent&>(protagonist);
            PlayRecord rec = simulate(g, p0, p1, {depth, height});
            out << "strategy: " << to_string(strat.player) << '\n'
                << describe(g, rec);
            if (rec.status == PlayStatus::aborted)
              return failure;
            if (rec.winner && *rec.winner != strat.player)
              return counterexample;
            return ok;
          }

        if (*play)
          {
            GameSpec g = load_game(common.game);
            Player human = as == "player0" ? Player::zero : Player::one;
            Synthesis s = synthesize(g, common);
            InteractiveAgent you(in, out);
            std::unique_ptr<Agent> machine;
            if (s.strategy && s.strategy->player != human)
              {
                out << "you play " << to_string(human)
                    << " against a winning strategy\n";
                machine = std::make_unique<StrategyAgent>(*s.strategy);
              }
            else
              {
                out << "you play " << to_string(human)
                    << " against random moves (seed " << seed << ")\n";
                machine = std::make_unique<RandomAgent>(seed);
              }
            Agent& p0 = human == Player::zero ? you : *machine;
            Agent& p1 = human == Player::zero ? *machine : you;
            PlayRecord rec = simulate(g, p0, p1, {depth, 1000});
            out << describe(g, rec);
            return ok;
          }

        if (*verify)
          {
            GameSpec g = load_game(common.game);
            if (oracle_cap)
              {
                Player z = finite_arena_oracle(g, oracle_cap);
                SolveResult r = solve(g, caps_of(common));
                out << "oracle: " << to_string(z) << '\n'
                    << "solve: " << to_string(r.status) << '\n';
                if (!r.winner)
                  return unknown_at_cap;
                bool agree = *r.winner == z;
                out << (agree ? "agree" : "DISAGREE") << '\n';
                return agree ? ok : failure;
              }
            StrategyPDA strat;
            if (!strategy_in.empty())
              strat = load_strategy(strategy_in);
            else
              {
                Synthesis s = synthesize(g, common);
                if (!s.strategy)
                  {
                    print_summary(err, s);
                    return unknown_at_cap;
                  }
                strat = *s.strategy;
              }
            ValidationReport rep = validate_strategy(strat, g, vb);
            out << rep.summary() << '\n';
            if (rep.counterexample)
              out << describe(g, *rep.counterexample);
            return rep.clean ? ok : counterexample;
          }

        if (*convert)
          {
            GameSpec g = load_game(common.game);
            emit(out, output, print_game(convert_game_to_stair(g)));
            return ok;
          }

        if (*dot)
          {
            std::string text;
            if (is_strategy_file(common.game))
              text = export_dot(load_strategy(common.game));
            else
              {
                GameSpec g = load_game(common.game);
                if (trace)
                  {
                    SolveResult r = solve(g, caps_of(common));
                    if (!r.winner)
                      {
                        err << to_string(r.status) << '\n';
                        return unknown_at_cap;
                      }
                    text = export_dot(r.witness, r.automaton);
                  }
                else
                  text = export_dot(g, cap);
              }
            emit(out, output, text);
            return ok;
          }
      }
    catch (const UsageError& e)
      {
        err << "usage error: " << e.what() << '\n';
        return usage;
      }
    catch (const std::exception& e)
      {
        err << "error: " << e.what() << '\n';
        return failure;
      }
    return usage;
  }
}
