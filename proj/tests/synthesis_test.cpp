#include <gtest/gtest.h>

#include <pdsynth/extract.hpp>
#include <pdsynth/fixtures.hpp>
#include <pdsynth/random_games.hpp>
#include <pdsynth/simulate.hpp>
#include <pdsynth/validate.hpp>

#include "test_support.hpp"

using namespace pdsynth;

namespace
{
  bool has_rule(const StrategyPDA& s, const std::string& line)
  {
    return print_strategy(s).find(line) != std::string::npos;
  }

  // Plays the listed adversary letters in order; forced ε-moves are taken
  // without consuming the script.
  class Follower : public Agent
  {
  public:
    explicit Follower(std::vector<Letter> script) : script_(std::move(script)) {}
    std::optional<std::size_t> choose(const GameSpec&, const Configuration&,
                                      std::span<const Move> moves) override
    {
      if (moves.size() == 1 && moves[0].letter == epsilon)
        return 0;
      if (next_ >= script_.size())
        return std::nullopt;
      for (std::size_t i = 0; i < moves.size(); ++i)
        if (moves[i].letter == script_[next_])
          {
            ++next_;
            return i;
          }
      return std::nullopt;
    }

  private:
    std::vector<Letter> script_;
    std::size_t next_ = 0;
  };

  std::vector<Letter> letters_only(const std::vector<Letter>& xs)
  {
    std::vector<Letter> out;
    for (Letter a : xs)
      if (a != epsilon)
        out.push_back(a);
    return out;
  }

  FormatDescriptor format_for(RandomFormat f, const GameSpec& g)
  {
    FormatDescriptor d;
    d.deterministic = true;
    switch (f)
      {
      case RandomFormat::deterministic:
        break;
      case RandomFormat::realtime:
        d.realtime = true;
        break;
      case RandomFormat::visibly:
        d.visibly = g.format.visibly;
        break;
      case RandomFormat::one_counter:
        d.one_counter = true;
        break;
      }
    return d;
  }
}

TEST(ExtractGeneral, BlindCounterAnswersAOnAPositiveCounter)
{
  GameSpec g = blind_counter_game();
  SolveResult r = solve(g);
  StrategyPDA s = extract_general(r);
  EXPECT_NO_THROW(s.validate());
  StrategyRunner run(s);
  for (Letter a : support::letters_of(g.machine, "aabc"))
    ASSERT_TRUE(run.feed(a));
  EXPECT_EQ(run.respond(), std::optional<Letter>(0));

  StrategyRunner empty(s);
  for (Letter a : support::letters_of(g.machine, "abc"))
    ASSERT_TRUE(empty.feed(a));
  EXPECT_EQ(empty.respond(), std::optional<Letter>(1));
}

TEST(ExtractGeneral, EntriesBecomeSkipPushAndPopRules)
{
  SolveResult r = solve(blind_counter_game());
  StrategyPDA s = extract_general(r);
  EXPECT_TRUE(has_rule(s, "q1 c _ -> q2 skip out ~"));
  EXPECT_TRUE(has_rule(s, "q0 a _ -> q0 push p1 out ~"));
  EXPECT_TRUE(has_rule(s, "q0 b p1 -> q1 pop out ~"));
  EXPECT_EQ(s.machine.num_states(), 5u);
  EXPECT_EQ(s.machine.states, blind_counter_game().machine.states);
}

TEST(ExtractGeneral, BlindCounterStrategySurvivesExhaustiveValidation)
{
  GameSpec g = blind_counter_game();
  StrategyPDA s = extract_general(solve(g));
  ValidationReport rep = validate_strategy(s, g, {24, 12});
  EXPECT_TRUE(rep.clean) << rep.summary();
  EXPECT_FALSE(rep.counterexample);
}

TEST(ExtractVisibly, VisiblyCounterStrategyIsVisiblyAndWinsEveryRound)
{
  GameSpec g = visibly_counter_game();
  SolveResult r = solve(g);
  ASSERT_EQ(r.winner, std::optional(Player::zero));
  StrategyPDA s = extract_visibly(strategy_for_game(r), *g.format.visibly);
  FormatDescriptor f;
  f.deterministic = true;
  f.visibly = g.format.visibly;
  EXPECT_TRUE(check_strategy_format(s, f).ok());

  // Calls never consult the top: one rule per top with a common effect.
  PushdownMachine gf = s.game_facing();
  std::map<std::pair<StateId, Letter>, std::set<std::pair<StateId, Symbol>>>
    effect;
  std::map<std::pair<StateId, Letter>, std::size_t> count;
  for (const Rule& rule : gf.rules)
    if (rule.letter == 0)
      {
        effect[{rule.from, rule.letter}].insert({rule.to, rule.write[0]});
        ++count[{rule.from, rule.letter}];
      }
  for (const auto& [key, e] : effect)
    {
      EXPECT_EQ(e.size(), 1u);
      EXPECT_EQ(count[key], gf.symbols.size());
    }

  ValidationReport rep = validate_strategy(s, g, {40, 14});
  EXPECT_TRUE(rep.clean) << rep.summary();
  for (int n = 2; n <= 12; ++n)
    {
      StrategyAgent p0(s);
      ScriptedAgent p1(support::letters_of(g.machine,
                                           std::string(n, 'c') + "a"));
      PlayRecord rec = simulate(g, p0, p1, {200, 40});
      ASSERT_EQ(rec.status, PlayStatus::lasso) << n;
      EXPECT_EQ(rec.winner, std::optional(Player::zero)) << n;
    }
}

TEST(ExtractVisibly, RejectsStackMotionNotDrivenByInput)
{
  SolveResult r = solve(blind_counter_game());
  VisiblyAlphabet v{{0}, {1}, {2, 3}};
  EXPECT_THROW(extract_visibly(extract_general(r), v), std::invalid_argument);
}

TEST(ExtractVisibly, AgreesWithGeneralStrategyStepByStep)
{
  GameSpec g = visibly_counter_game();
  SolveResult r = solve(g);
  StrategyPDA general = strategy_for_game(r);
  StrategyPDA vis = extract_visibly(general, *g.format.visibly);
  for (std::uint64_t seed = 0; seed < 50; ++seed)
    {
      StrategyAgent a(general), b(vis);
      RandomAgent ra(seed), rb(seed);
      PlayRecord x = simulate(g, a, ra, {30, 40});
      PlayRecord y = simulate(g, b, rb, {30, 40});
      // Lassos close at different points since the memories differ.
      std::size_t n = std::min(x.moves.size(), y.moves.size());
      ASSERT_GT(n, 0u);
      EXPECT_TRUE(std::equal(x.moves.begin(), x.moves.begin() + n,
                             y.moves.begin()))
        << seed;
      EXPECT_EQ(x.winner, y.winner) << seed;
    }
}

TEST(ExtractRealtime, RewriteAndPushesMergeIntoOneTransition)
{
  GameSpec g = parse_game(R"(name merge
format deterministic realtime
input a b c
stack A B
states q0 q1 q2
init q0
player0 q2
player1 q0 q1
color q0 1 q1 1 q2 0
rules
q0 a _ -> q1 push A
q1 b A -> q2 rewrite B A B
q2 c B -> q2 skip
)");
  SolveResult r = solve(g);
  ASSERT_EQ(r.winner, std::optional(Player::zero));
  ASSERT_FALSE(r.normalized->map.identity);
  StrategyPDA s = extract_realtime(r);
  FormatDescriptor f;
  f.deterministic = true;
  f.realtime = true;
  EXPECT_TRUE(check_strategy_format(s, f).ok());
  bool merged = false;
  for (const Rule& rule : s.machine.rules)
    {
      if (rule.letter == 1)
        merged = rule.write.size() == 3 && rule.write.back() == rule.top;
      if (rule.letter == epsilon)
        {
          EXPECT_NE(s.output[&rule - s.machine.rules.data()], epsilon);
        }
    }
  EXPECT_TRUE(merged);
  EXPECT_TRUE(validate_strategy(s, g).clean);
}

TEST(ExtractRealtime, NormalGameGivesTheGeneralStrategy)
{
  SolveResult r = solve(visibly_counter_game());
  StrategyPDA a = extract_general(r), b = extract_realtime(r);
  EXPECT_EQ(a.machine.rules.size(), b.machine.rules.size());
  EXPECT_EQ(a.output, b.output);
  for (std::size_t i = 0; i < a.machine.rules.size(); ++i)
    {
      EXPECT_EQ(a.machine.rules[i].letter, b.machine.rules[i].letter);
      EXPECT_EQ(a.machine.rules[i].write.size(),
                b.machine.rules[i].write.size());
    }
}

TEST(ExtractRealtime, LockStepWithGeneralStrategyOnNormalizedGame)
{
  Rng rng(31);
  int games = 0, plays = 0;
  for (int i = 0; i < 400 && games < 10; ++i)
    {
      GameSpec g = random_game_in_format(rng, RandomFormat::realtime);
      SolveResult r = solve(g);
      if (!r.winner || r.normalized->map.identity)
        continue;
      StrategyPDA rt = extract_realtime(r);
      StrategyPDA gen = extract_general(r);
      ++games;
      for (int k = 0; k < 10; ++k)
        {
          StrategyAgent prot(rt);
          RandomAgent adv(rng());
          Agent& p0 = rt.player == Player::zero ? static_cast<Agent&>(prot) : adv;
          Agent& p1 = rt.player == Player::zero ? static_cast<Agent&>(adv) : prot;
          PlayRecord orig = simulate(g, p0, p1, {30, 40});
          std::vector<Letter> adv_letters;
          for (std::size_t j = 0; j < orig.moves.size(); ++j)
            if (g.owner_of(orig.configs[j].state) != rt.player)
              adv_letters.push_back(orig.moves[j]);
          StrategyAgent gprot(gen);
          Follower follow(adv_letters);
          Agent& q0 = gen.player == Player::zero ? static_cast<Agent&>(gprot) : follow;
          Agent& q1 = gen.player == Player::zero ? static_cast<Agent&>(follow) : gprot;
          PlayRecord norm = simulate(r.normalized->game, q0, q1, {90, 120});
          auto x = letters_only(orig.moves), y = letters_only(norm.moves);
          std::size_t n = std::min(x.size(), y.size());
          EXPECT_TRUE(std::equal(x.begin(), x.begin() + n, y.begin()))
            << print_game(g);
          plays += n > 0;
        }
    }
  EXPECT_EQ(games, 10);
  EXPECT_GE(plays, 50);
}

TEST(ExtractOneCounter, BlindCounterFollowsTheLassoSchemata)
{
  GameSpec g = blind_counter_game();
  SolveResult r = solve(g);
  ASSERT_TRUE(r.witness.lasso);
  EXPECT_EQ(*r.witness.lasso, (std::pair<std::size_t, std::size_t>{1, 1}));
  StrategyPDA s = extract_one_counter(r);
  FormatDescriptor f;
  f.deterministic = true;
  f.one_counter = true;
  EXPECT_TRUE(check_strategy_format(s, f).ok());
  // Loop completion pushes; leaving the loop entry tests for zero.
  EXPECT_TRUE(has_rule(s, "q0@1 a A -> q0@1 push A out ~"));
  EXPECT_TRUE(has_rule(s, "q0@1 b _ -> q1@0 skip out ~"));
  EXPECT_TRUE(has_rule(s, "q0@1 b A -> q1@1 pop out ~"));
  ValidationReport rep = validate_strategy(s, g, {24, 12});
  EXPECT_TRUE(rep.clean) << rep.summary();
}

TEST(ExtractOneCounter, NeedsAUnaryStackAlphabet)
{
  GameSpec g = parse_game(R"(name two
input a
stack A B
states q
init q
player0 q
color q 0
rules
q a _ -> q push A
q a A -> q push B
q a B -> q pop
)");
  SolveResult r = solve(g);
  ASSERT_TRUE(r.winner);
  EXPECT_THROW(extract_one_counter(r), std::invalid_argument);
}

TEST(FormatSynthesis, BlindBlindCounterIsUnknownAtCap)
{
  FormatDescriptor f;
  f.deterministic = true;
  f.blind = true;
  std::optional<StrategyPDA> s;
  SolveResult r = solve_in_format(blind_counter_game(), {}, f, &s);
  EXPECT_EQ(r.status, SolveStatus::unknown_at_cap);
  EXPECT_FALSE(s);
}

TEST(FormatSynthesis, VisiblyOneCounterVisiblyCounterIsUnknownAtCap)
{
  GameSpec g = visibly_counter_game();
  FormatDescriptor f;
  f.deterministic = true;
  f.one_counter = true;
  f.visibly = g.format.visibly;
  std::optional<StrategyPDA> s;
  SolveResult r = solve_in_format(g, {}, f, &s);
  EXPECT_EQ(r.status, SolveStatus::unknown_at_cap);
  EXPECT_FALSE(s);
}

TEST(FormatSynthesis, ExtractedStrategiesKeepTheirFormat)
{
  Rng rng(123);
  for (RandomFormat kind : {RandomFormat::deterministic, RandomFormat::realtime,
                            RandomFormat::visibly, RandomFormat::one_counter})
    {
      int solved = 0;
      for (int i = 0; i < 300 && solved < 8; ++i)
        {
          GameSpec g = random_game_in_format(rng, kind);
          FormatDescriptor f = format_for(kind, g);
          ASSERT_TRUE(check_format(g.machine, f).ok()) << print_game(g);
          std::optional<StrategyPDA> s;
          SearchCaps caps;
          caps.max_classes = 4;
          SolveResult r = solve_in_format(g, caps, f, &s);
          if (!r.winner)
            continue;
          ASSERT_TRUE(s) << print_game(g);
          EXPECT_TRUE(check_strategy_format(*s, f).ok()) << print_game(g);
          ValidationReport rep = validate_strategy(*s, g, {12, 8});
          EXPECT_TRUE(rep.clean) << print_game(g) << print_strategy(*s)
                                 << rep.summary();
          ++solved;
        }
      EXPECT_EQ(solved, 8);
    }
}
