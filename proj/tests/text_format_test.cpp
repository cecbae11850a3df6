#include <gtest/gtest.h>

#include <algorithm>

#include <pdsynth/dot.hpp>
#include <pdsynth/extract.hpp>
#include <pdsynth/fixtures.hpp>
#include <pdsynth/random_games.hpp>

#include "test_support.hpp"

using namespace pdsynth;

namespace
{
  std::size_t count_lines_with(const std::string& text, const std::string& s)
  {
    std::size_t n = 0, pos = 0;
    while ((pos = text.find(s, pos)) != std::string::npos)
      {
        ++n;
        pos += s.size();
      }
    return n;
  }

  const char* header = "input a\nstack A\n";
}

TEST(TextFormat, FixtureFilesMatchTheBuiltInGames)
{
  Fixtures f = fixtures();
  EXPECT_EQ(load_game(support::fixture_path("blind-counter.game")), f.blind_counter);
  EXPECT_EQ(load_game(support::fixture_path("visibly-counter.game")), f.visibly_counter);
  EXPECT_EQ(load_game(support::fixture_path("divergence.game")), f.divergence);
  EXPECT_EQ(load_game(support::fixture_path("divergence-stair.game")),
            divergence_game(Condition::stair));
}

TEST(TextFormat, StarExpandsToEveryTop)
{
  GameSpec g = parse_game(std::string(header)
                          + "states q\ninit q\nplayer0 q\ncolor q 0\n"
                            "rules\nq a * -> q push A\n");
  ASSERT_EQ(g.machine.rules.size(), 2u);
  EXPECT_EQ(g.machine.rules[0].top, bottom);
  EXPECT_EQ(g.machine.rules[1].top, 1);
  EXPECT_EQ(g.machine.rules[1].write, (std::vector<Symbol>{1, 1}));
}

TEST(TextFormat, ParseErrors)
{
  auto fails = [](const std::string& text) {
    EXPECT_THROW(parse_game(text), ParseError) << text;
  };
  fails(std::string(header) + "states\n");
  fails(std::string(header) + "init q\n");
  fails(std::string(header) + "states q\ninit q\ncolor q 0\n");
  fails(std::string(header) + "states q\ninit q\nplayer0 q\n");
  fails(std::string(header)
        + "states q\ninit q\nplayer0 q\ncolor q 0\nrules\nq a * -> q pop\n");
  fails(std::string(header)
        + "states q\ninit q\nplayer0 q\ncolor q 0\nrules\nq z _ -> q skip\n");
  fails(std::string(header)
        + "states q\ninit q\nplayer0 q\ncolor q 0\nrules\nq a _ -> q pop\n");
}

TEST(TextFormat, ErrorsCarryTheLineNumber)
{
  try
    {
      parse_game("input a\nstates q\ninit q\nplayer0 q\ncolor q 0\nrules\n"
                 "q a _ -> r skip\n");
      FAIL();
    }
  catch (const ParseError& e)
    {
      EXPECT_EQ(e.line(), 7u);
    }
}

TEST(TextFormat, FixturesRoundTrip)
{
  Fixtures f = fixtures();
  for (const GameSpec* g : {&f.blind_counter, &f.visibly_counter, &f.divergence})
    EXPECT_EQ(parse_game(print_game(*g)), *g) << print_game(*g);
}

TEST(TextFormat, RandomGamesRoundTrip)
{
  Rng rng(5);
  for (int i = 0; i < 100; ++i)
    {
      GameSpec g = i % 2 ? random_normal_form_game(rng, {})
                         : random_game_in_format(
                           rng, static_cast<RandomFormat>((i / 2) % 4));
      g.name = "g" + std::to_string(i);
      std::string text = print_game(g);
      GameSpec back = parse_game(text);
      EXPECT_EQ(back.machine, g.machine) << text;
      EXPECT_EQ(back.owner, g.owner);
      EXPECT_EQ(back.col, g.col);
      EXPECT_EQ(back.condition, g.condition);
      EXPECT_EQ(print_game(back), text);
    }
}

TEST(TextFormat, StrategiesRoundTrip)
{
  StrategyPDA s = support::blind_counter_always_a();
  StrategyPDA back = parse_strategy(print_strategy(s));
  EXPECT_EQ(back.machine, s.machine);
  EXPECT_EQ(back.output, s.output);
  EXPECT_EQ(back.player, s.player);

  Fixtures f = fixtures();
  for (const GameSpec* g : {&f.blind_counter, &f.visibly_counter, &f.divergence})
    {
      StrategyPDA t = strategy_for_game(solve(*g));
      StrategyPDA u = parse_strategy(print_strategy(t));
      EXPECT_EQ(u.machine, t.machine);
      EXPECT_EQ(u.output, t.output);
      EXPECT_EQ(u.player, t.player);
    }
}

TEST(TextFormat, GameParserRejectsStrategies)
{
  EXPECT_THROW(parse_game(print_strategy(support::blind_counter_always_a())),
               ParseError);
}

TEST(Dot, BlindCounterArenaUpToHeightThree)
{
  std::string dot = export_dot(blind_counter_game(), 3);
  // 5 states times the stacks ⊥, A⊥, AA⊥.
  EXPECT_EQ(count_lines_with(dot, "shape=box"), 15u);
  EXPECT_EQ(count_lines_with(dot, "style=rounded"), 6u);
  EXPECT_NE(dot.find("// overflow"), std::string::npos);
  EXPECT_EQ(dot.rfind("digraph", 0), 0u);
}

TEST(Dot, EmptyMachineGivesAnEmptyGraph)
{
  GameSpec g;
  g.name = "empty";
  EXPECT_EQ(export_dot(g, 3), "digraph \"empty\" {\n}\n");
}

TEST(Dot, StrategyHasOneNodePerState)
{
  StrategyPDA s = support::blind_counter_always_a();
  std::string dot = export_dot(s);
  EXPECT_EQ(count_lines_with(dot, "shape="), s.machine.num_states());
  EXPECT_EQ(count_lines_with(dot, "->"), s.machine.rules.size());
}
