#include <gtest/gtest.h>

#include <pdsynth/annotation.hpp>
#include <pdsynth/random_games.hpp>

#include "brute_detours.hpp"

using namespace pdsynth;

namespace
{
  // q (Player0) --a,N--> q' ; q' --b,N--> q''
  GameSpec chain_game(int c1, int c2)
  {
    GameSpec g;
    g.machine.add_state("q1");
    g.machine.add_state("q2");
    g.machine.add_state("q3");
    g.machine.add_letter("a");
    g.machine.add_letter("b");
    g.machine.add_symbol("A");
    g.machine.add_rule({0, 0, bottom, 1, {bottom}});
    g.machine.add_rule({1, 1, bottom, 2, {bottom}});
    g.owner = {Player::zero, Player::zero, Player::zero};
    g.col = {{0, c1, c2}, 3};
    return g;
  }

  RegularCandidate one_class(const TreeAutomaton& a)
  {
    RegularCandidate c;
    c.root = c.add_class(bottom, a.gamma);
    return c;
  }
}

TEST(LeastAnnotation, StayMoveRecordsTargetPriority)
{
  TreeAutomaton a = build_automaton(chain_game(1, 2));
  RegularCandidate c = one_class(a);
  c.strategy[0].insert({0, 0, Direction::stay(), 1});
  auto ann = least_annotation(c, a);
  EXPECT_EQ(ann[0].h, (std::set<Detour>{{0, 1, 1}}));
}

TEST(LeastAnnotation, DetoursCompose)
{
  TreeAutomaton a = build_automaton(chain_game(2, 0));
  RegularCandidate c = one_class(a);
  c.strategy[0].insert({0, 0, Direction::stay(), 1});
  c.strategy[0].insert({1, 1, Direction::stay(), 2});
  auto ann = least_annotation(c, a);
  EXPECT_TRUE(ann[0].h.count({0, 2, 1}));
  EXPECT_TRUE(ann[0].h.count({1, 0, 2}));
  EXPECT_TRUE(ann[0].h.count({0, 0, 2}));
  EXPECT_EQ(ann[0].h.size(), 3u);
}

TEST(LeastAnnotation, EmptyStrategyGivesEmptyAnnotation)
{
  GameSpec g = chain_game(1, 1);
  for (Condition kind : {Condition::parity, Condition::stair})
    {
      g.condition = kind;
      TreeAutomaton a = build_automaton(g);
      RegularCandidate c = one_class(a);
      c.add_class(1, a.gamma);
      c.next[0][0] = 1;
      c.next[1][0] = 1;
      for (const auto& an : least_annotation(c, a))
        EXPECT_EQ(an, Annotation{});
    }
}

TEST(LeastAnnotation, StairKeepsOnlyPrioritiesAtTheNode)
{
  // p --a,↓A--> r (col 1) --b,↑--> p' (col 2)
  GameSpec g;
  g.machine.add_state("p");
  g.machine.add_state("r");
  g.machine.add_state("p'");
  g.machine.add_letter("a");
  g.machine.add_letter("b");
  g.machine.add_symbol("A");
  g.machine.add_rule({0, 0, bottom, 1, {1, bottom}});
  g.machine.add_rule({1, 1, 1, 2, {}});
  g.owner = {Player::zero, Player::zero, Player::zero};
  g.col = {{0, 1, 2}, 3};
  g.condition = Condition::stair;
  TreeAutomaton a = build_automaton(g);
  RegularCandidate c = one_class(a);
  int ch = c.add_class(1, a.gamma);
  c.next[0][0] = ch;
  c.strategy[0].insert({0, 0, Direction::down(1), 1});
  c.strategy[ch].insert({1, 1, Direction::up(), 2});
  auto stair = least_annotation(c, a);
  EXPECT_EQ(stair[0].h3, (std::set<Detour>{{0, 2, 2}}));
  EXPECT_EQ(stair[0].h2, (std::set<std::pair<int, int>>{{0, 2}}));

  g.condition = Condition::parity;
  TreeAutomaton b = build_automaton(g);
  auto parity = least_annotation(c, b);
  EXPECT_EQ(parity[0].h, (std::set<Detour>{{0, 1, 2}}));
}

TEST(LeastAnnotation, MatchesBruteForceDetours)
{
  Rng rng(4242);
  int compared = 0;
  for (int i = 0; i < 120; ++i)
    {
      RandomGameParams p;
      p.max_states = 3;
      p.condition = i % 2 ? Condition::stair : Condition::parity;
      GameSpec g = random_normal_form_game(rng, p);
      TreeAutomaton a = build_automaton(g);
      RegularCandidate c = random_candidate(rng, a, 3);
      auto ann = least_annotation(c, a);
      for (std::size_t k = 0; k < c.num_classes(); ++k)
        {
          auto brute = support::brute_detours(c, a, static_cast<int>(k), 12);
          if (a.kind == Condition::parity)
            ASSERT_EQ(ann[k].h, brute.all) << "game " << i << " class " << k;
          else
            {
              ASSERT_EQ(ann[k].h3, brute.at_node) << "game " << i;
              ASSERT_EQ(ann[k].h1, brute.pairs) << "game " << i;
              ASSERT_EQ(ann[k].h2, brute.single) << "game " << i;
            }
        }
      ++compared;
    }
  EXPECT_EQ(compared, 120);
}

TEST(LeastAnnotation, IsClosedUnderComposition)
{
  Rng rng(77);
  for (int i = 0; i < 50; ++i)
    {
      GameSpec g = random_normal_form_game(rng, {});
      TreeAutomaton a = build_automaton(g);
      RegularCandidate c = random_candidate(rng, a, 3);
      auto ann = least_annotation(c, a);
      EXPECT_EQ(ann, least_annotation(c, a));
      for (const auto& an : ann)
        for (const Detour& d : an.h)
          for (const Detour& e : an.h)
            if (d.to == e.from)
              {
                ASSERT_TRUE(an.h.count(
                  {d.from, std::min(d.priority, e.priority), e.to}));
              }
    }
}
