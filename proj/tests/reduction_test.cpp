#include <gtest/gtest.h>

#include <pdsynth/annotation.hpp>
#include <pdsynth/automaton.hpp>
#include <pdsynth/candidate.hpp>
#include <pdsynth/fixtures.hpp>
#include <pdsynth/oracle.hpp>
#include <pdsynth/random_games.hpp>
#include <pdsynth/search.hpp>

#include "test_support.hpp"

using namespace pdsynth;

namespace
{
  bool has_atom(const Formula& f, Letter a, Direction d, int target)
  {
    for (const Atom& x : f.atoms)
      if (x.letter == a && x.dir == d && x.target == target)
        return true;
    return false;
  }

  int state_of(const TreeAutomaton& a, const std::string& name)
  {
    for (std::size_t i = 0; i < a.names.size(); ++i)
      if (a.names[i] == name)
        return static_cast<int>(i);
    ADD_FAILURE() << "no automaton state " << name;
    return -1;
  }

  const StrategyEntry* entry_for(const RegularCandidate& c, int cls, int q)
  {
    for (const auto& e : c.strategy[cls])
      if (e.state == q)
        return &e;
    return nullptr;
  }

  std::size_t count_candidates(const GameSpec& g, SearchCaps caps)
  {
    TreeAutomaton a = build_automaton(normalize_game(g).game);
    CandidateEnumerator e(a, caps);
    std::size_t n = 0;
    while (e.next())
      ++n;
    return n;
  }
}

TEST(BuildAutomaton, BlindCounterShape)
{
  GameSpec g = blind_counter_game();
  TreeAutomaton a = build_automaton(g);
  EXPECT_EQ(a.num_states(), 7u);
  const Formula& f = a.at(2, 1);
  EXPECT_FALSE(f.conjunctive);
  ASSERT_EQ(f.atoms.size(), 2u);
  EXPECT_TRUE(has_atom(f, 0, Direction::stay(), 3));
  EXPECT_TRUE(has_atom(f, 1, Direction::stay(), 4));
  // q4 belongs to Player1: every move is required.
  EXPECT_TRUE(a.at(4, 1).conjunctive);
  EXPECT_TRUE(has_atom(a.at(4, 1), 2, Direction::down(1), 3));
  EXPECT_TRUE(has_atom(a.at(4, 1), 3, Direction::stay(), 4));
  EXPECT_TRUE(has_atom(a.at(0, 1), 1, Direction::up(), 1));
}

TEST(BuildAutomaton, VerifierStates)
{
  GameSpec g = blind_counter_game();
  TreeAutomaton a = build_automaton(g);
  int v = a.verifier(1);
  const Formula& on_a = a.at(v, 1);
  ASSERT_EQ(on_a.atoms.size(), 1u);
  EXPECT_EQ(on_a.atoms[0].dir, Direction::down(1));
  EXPECT_EQ(on_a.atoms[0].target, v);
  EXPECT_TRUE(a.at(v, bottom).is_false());
  EXPECT_EQ(a.col[v], 0);
  EXPECT_EQ(a.col[a.initial()], 0);
  const Formula& init = a.at(a.initial(), bottom);
  EXPECT_TRUE(init.conjunctive);
  EXPECT_TRUE(has_atom(init, epsilon, Direction::stay(), 0));
  EXPECT_TRUE(has_atom(init, epsilon, Direction::down(1), v));

  // With two stack symbols q̄_A on label B is false.
  GameSpec two;
  two.machine.add_state("q");
  two.machine.add_letter("a");
  two.machine.add_symbol("A");
  two.machine.add_symbol("B");
  two.machine.add_rule({0, 0, bottom, 0, {bottom}});
  two.owner = {Player::zero};
  two.col = {{0}, 1};
  TreeAutomaton b = build_automaton(two);
  EXPECT_FALSE(b.at(b.verifier(1), 1).is_false());
  EXPECT_TRUE(b.at(b.verifier(1), 2).is_false());
  EXPECT_TRUE(b.at(b.verifier(2), 1).is_false());
}

TEST(BuildAutomaton, RejectsNonNormalForm)
{
  GameSpec g;
  g.machine.add_state("q");
  g.machine.add_letter("a");
  g.machine.add_symbol("A");
  g.machine.add_rule({0, 0, bottom, 0, {1, 1, bottom}});
  g.owner = {Player::zero};
  g.col = {{0}, 1};
  EXPECT_THROW(build_automaton(g), std::invalid_argument);
}

TEST(Solve, BlindCounterIsWonByPlayer0WithDistinctBottomAndCounterClasses)
{
  GameSpec g = blind_counter_game();
  SolveResult r = solve(g);
  ASSERT_EQ(r.status, SolveStatus::solved_player0);
  const RegularCandidate& c = r.witness;
  ASSERT_TRUE(c.lasso);
  EXPECT_TRUE(check_consistency(c, r.automaton).ok());
  EXPECT_TRUE(check_traces(c, r.automaton).ok);

  // The strategy answers b at q2 on an empty counter, a otherwise.
  const StrategyEntry* at_root = entry_for(c, c.root, 2);
  ASSERT_NE(at_root, nullptr);
  EXPECT_EQ(at_root->letter, 1);
  int a_class = c.child(c.root, 1);
  ASSERT_GE(a_class, 0);
  const StrategyEntry* at_a = entry_for(c, a_class, 2);
  ASSERT_NE(at_a, nullptr);
  EXPECT_EQ(at_a->letter, 0);
  int deeper = c.child(a_class, 1);
  if (deeper >= 0 && entry_for(c, deeper, 2))
    {
      EXPECT_EQ(entry_for(c, deeper, 2)->letter, 0);
    }
}

TEST(Solve, BlindCounterWithinSmallLassoCaps)
{
  SearchCaps caps;
  caps.max_classes = 2;
  caps.max_prefix = 2;
  caps.max_period = 2;
  EXPECT_EQ(solve(blind_counter_game(), caps).winner, std::optional(Player::zero));
}

TEST(Solve, OddSelfLoopOfPlayer1)
{
  GameSpec g;
  g.machine.add_state("q");
  g.machine.add_letter("a");
  g.machine.add_rule({0, 0, bottom, 0, {bottom}});
  g.owner = {Player::one};
  g.col = {{1}, 2};
  SolveResult r = solve(g);
  EXPECT_EQ(r.status, SolveStatus::solved_player1);
  EXPECT_EQ(r.witness_game.owner[0], Player::zero);
}

TEST(Solve, RejectsNondeterministicGames)
{
  GameSpec g;
  g.machine.add_state("q");
  g.machine.add_letter("a");
  g.machine.add_rule({0, 0, bottom, 0, {bottom}});
  g.machine.add_rule({0, epsilon, bottom, 0, {bottom}});
  g.owner = {Player::one};
  g.col = {{1}, 2};
  EXPECT_THROW(solve(g), std::invalid_argument);
}

TEST(Solve, DivergenceFixtureDependsOnTheCondition)
{
  EXPECT_EQ(solve(divergence_game(Condition::parity)).winner,
            std::optional(Player::one));
  EXPECT_EQ(solve(divergence_game(Condition::stair)).winner,
            std::optional(Player::zero));
}

TEST(Solve, VisiblyCounterIsWonByPlayer0)
{
  EXPECT_EQ(solve(visibly_counter_game()).winner, std::optional(Player::zero));
}

TEST(Consistency, MissingRootEntryViolatesCondition3)
{
  GameSpec g = blind_counter_game();
  SolveResult r = solve(g);
  RegularCandidate c = r.witness;
  int init = r.automaton.initial();
  for (auto it = c.strategy[c.root].begin(); it != c.strategy[c.root].end();)
    it = it->state == init ? c.strategy[c.root].erase(it) : std::next(it);
  auto v = check_consistency(c, r.automaton);
  ASSERT_FALSE(v.ok());
  bool cond3 = false;
  for (const auto& x : v.violations)
    cond3 = cond3 || x.condition == 3;
  EXPECT_TRUE(cond3);
}

TEST(Consistency, MissingPlayer0EntryViolatesCondition2)
{
  GameSpec g = blind_counter_game();
  SolveResult r = solve(g);
  RegularCandidate c = r.witness;
  for (auto it = c.strategy[c.root].begin(); it != c.strategy[c.root].end();)
    it = it->state == 2 ? c.strategy[c.root].erase(it) : std::next(it);
  auto v = check_consistency(c, r.automaton);
  ASSERT_FALSE(v.ok());
  bool cond2 = false;
  for (const auto& x : v.violations)
    cond2 = cond2 || x.condition == 2;
  EXPECT_TRUE(cond2);
}

TEST(Consistency, EntryOutsideTheFormulaViolatesCondition1)
{
  GameSpec g = blind_counter_game();
  SolveResult r = solve(g);
  RegularCandidate c = r.witness;
  // q2 moving with d is not a transition.
  c.strategy[c.root].insert({2, 3, Direction::stay(), 3});
  auto v = check_consistency(c, r.automaton);
  bool cond1 = false;
  for (const auto& x : v.violations)
    cond1 = cond1 || (x.condition == 1 && x.cls == c.root);
  EXPECT_TRUE(cond1);
}

TEST(Traces, AlwaysAOnEmptyCounterFails)
{
  GameSpec g = blind_counter_game();
  SolveResult r = solve(g);
  const TreeAutomaton& a = r.automaton;
  RegularCandidate c = r.witness;
  int root = c.root, ac = c.child(root, 1);
  ASSERT_GE(ac, 0);
  int q2 = state_of(a, "q2"), q3 = state_of(a, "q3"), q4 = state_of(a, "q4");
  auto& s0 = c.strategy[root];
  for (auto it = s0.begin(); it != s0.end();)
    it = (it->state == q2 || it->state == q3) ? s0.erase(it) : std::next(it);
  s0.insert({q2, 0, Direction::stay(), q3});
  s0.insert({q3, 2, Direction::down(1), q4});
  // Player1 at q4 on a counter: every move.
  for (const Atom& x : a.at(q4, 1).atoms)
    c.strategy[ac].insert({q4, x.letter, x.dir, x.target});
  int acc = c.child(ac, 1);
  if (acc >= 0 && acc != ac)
    for (const Atom& x : a.at(q4, 1).atoms)
      c.strategy[acc].insert({q4, x.letter, x.dir, x.target});
  annotate(c, a);
  EXPECT_TRUE(check_consistency(c, a).ok());
  TraceVerdict t = check_traces(c, a);
  EXPECT_FALSE(t.ok);
  ASSERT_FALSE(t.cycle.empty());
  int m = t.cycle.front().priority;
  for (const auto& v : t.cycle)
    m = std::min(m, v.priority);
  EXPECT_EQ(m % 2, 1);
}

TEST(Enumerate, DisjunctionWithOneClassGivesTwoChoices)
{
  // Player0 state p with two skip moves; no stack use.
  GameSpec g;
  g.machine.add_state("p");
  g.machine.add_letter("a");
  g.machine.add_letter("b");
  g.machine.add_symbol("A");
  g.machine.add_rule({0, 0, bottom, 0, {bottom}});
  g.machine.add_rule({0, 1, bottom, 0, {bottom}});
  g.owner = {Player::zero};
  g.col = {{0}, 1};
  SearchCaps caps;
  caps.max_classes = 1;
  caps.prune = false;
  EXPECT_EQ(count_candidates(g, caps), 2u);
}

TEST(Enumerate, NoPlayer0StatesGiveOneLabelling)
{
  GameSpec g;
  g.machine.add_state("p");
  g.machine.add_state("q");
  g.machine.add_letter("a");
  g.machine.add_letter("b");
  g.machine.add_symbol("A");
  g.machine.add_rule({0, 0, bottom, 1, {bottom}});
  g.machine.add_rule({0, 1, bottom, 0, {bottom}});
  g.machine.add_rule({1, 0, bottom, 0, {bottom}});
  g.owner = {Player::one, Player::one};
  g.col = {{0, 1}, 2};
  SearchCaps caps;
  caps.max_classes = 1;
  caps.prune = false;
  EXPECT_EQ(count_candidates(g, caps), 1u);
}

TEST(Enumerate, UnaryCandidatesAreLassosWithinCaps)
{
  GameSpec g = blind_counter_game();
  TreeAutomaton a = build_automaton(g);
  SearchCaps caps;
  caps.max_classes = 3;
  caps.max_prefix = 1;
  caps.max_period = 1;
  caps.prune = false;
  CandidateEnumerator e(a, caps);
  std::size_t n = 0;
  while (auto c = e.next())
    {
      ++n;
      ASSERT_TRUE(c->lasso);
      EXPECT_LE(c->lasso->first, 1u);
      EXPECT_LE(c->lasso->second, 1u);
      EXPECT_LE(c->real_classes(), 2u);
    }
  EXPECT_GT(n, 0u);
}

TEST(Solve, SwappedGamesNeverAgree)
{
  Rng rng(99);
  for (int i = 0; i < 40; ++i)
    {
      auto g = random_closed_game(rng, {}, 3, 100000, 8);
      ASSERT_TRUE(g);
      SolveResult a = solve(*g), b = solve(swap_roles(*g));
      ASSERT_TRUE(a.winner && b.winner);
      EXPECT_NE(*a.winner, *b.winner) << print_game(*g);
    }
}

TEST(Solve, AgreesWithFiniteArenaOracle)
{
  Rng rng(2024);
  for (int i = 0; i < 60; ++i)
    {
      auto g = random_closed_game(rng, {}, 3, 100000, 8);
      ASSERT_TRUE(g);
      SearchCaps caps;
      caps.max_classes = 7;
      SolveResult r = solve(*g, caps);
      ASSERT_TRUE(r.winner) << print_game(*g);
      EXPECT_EQ(*r.winner, finite_arena_oracle(*g, 3)) << print_game(*g);
    }
}

TEST(Traces, SupersetAnnotationNeverPassesWhereLeastFails)
{
  Rng rng(8);
  int checked = 0;
  for (int i = 0; i < 150; ++i)
    {
      GameSpec g = random_normal_form_game(rng, {});
      TreeAutomaton a = build_automaton(g);
      RegularCandidate c = random_candidate(rng, a, 3);
      annotate(c, a);
      bool least = check_traces(c, a).ok;
      EXPECT_EQ(least, check_traces(c, a).ok);
      RegularCandidate noisy = c;
      for (std::size_t p = 0; p < noisy.num_classes(); ++p)
        for (int k = 0; k < 3; ++k)
          {
            Detour d{static_cast<int>(rng() % a.game_states), static_cast<int>(rng() % a.k),
                     static_cast<int>(rng() % a.game_states)};
            noisy.annotation[p].h.insert(d);
          }
      if (check_traces(noisy, a).ok)
        {
          EXPECT_TRUE(least);
        }
      ++checked;
    }
  EXPECT_EQ(checked, 150);
}
