#include <benchmark/benchmark.h>

#include <pdsynth/annotation.hpp>
#include <pdsynth/extract.hpp>
#include <pdsynth/fixtures.hpp>
#include <pdsynth/oracle.hpp>
#include <pdsynth/random_games.hpp>
#include <pdsynth/validate.hpp>

using namespace pdsynth;

static void BM_SolveBlindCounter(benchmark::State& state)
{
  GameSpec g = blind_counter_game();
  for (auto _ : state)
    benchmark::DoNotOptimize(solve(g));
}
BENCHMARK(BM_SolveBlindCounter);

static void BM_SolveVisiblyCounter(benchmark::State& state)
{
  GameSpec g = visibly_counter_game();
  for (auto _ : state)
    benchmark::DoNotOptimize(solve(g));
}
BENCHMARK(BM_SolveVisiblyCounter);

static void BM_ValidateBlindCounter(benchmark::State& state)
{
  GameSpec g = blind_counter_game();
  StrategyPDA s = strategy_for_game(solve(g));
  for (auto _ : state)
    benchmark::DoNotOptimize(validate_strategy(s, g, {24, 12}));
}
BENCHMARK(BM_ValidateBlindCounter);

static void BM_LeastAnnotation(benchmark::State& state)
{
  Rng rng(1);
  GameSpec g = random_normal_form_game(rng, {});
  TreeAutomaton a = build_automaton(g);
  RegularCandidate c = random_candidate(rng, a, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(least_annotation(c, a));
}
BENCHMARK(BM_LeastAnnotation)->Arg(2)->Arg(4)->Arg(6);

static void BM_RandomClosedGame(benchmark::State& state)
{
  Rng rng(3);
  std::vector<GameSpec> games;
  while (games.size() < 20)
    if (auto g = random_closed_game(rng, {}, 3, 100000, 12))
      games.push_back(*g);
  for (auto _ : state)
    for (const GameSpec& g : games)
      {
        benchmark::DoNotOptimize(solve(g));
        benchmark::DoNotOptimize(finite_arena_oracle(g, 3));
      }
}
BENCHMARK(BM_RandomClosedGame)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
