#include <benchmark/benchmark.h>

#include <random>

#include "orbitwa/automaton.hpp"
#include "orbitwa/equivalence.hpp"
#include "orbitwa/finite_weighted.hpp"
#include "orbitwa/length_lab.hpp"

using namespace orbitwa;

namespace
{

// Number of distinct atoms in the word, over equality atoms with one register.
WeightedRegisterAutomaton count_letters()
{
  WeightedRegisterAutomaton a;
  a.kind = AtomKind::Equality;
  a.registers = 1;
  auto x = a.add_tag("x");
  auto wait = a.add_control("wait", 1);
  auto hold = a.add_control("hold");
  a.add_transition(wait, x, wait, {}, {clear()}, 1);
  a.add_transition(wait, x, hold, {}, {store_input()}, 1);
  a.add_transition(hold, x, hold, {}, {keep(1)}, 1);
  a.add_final(hold, {}, 1);
  return a;
}

FiniteWeightedAutomaton random_finite(std::size_t states, std::size_t letters, std::uint64_t seed)
{
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coin(0, 3), value(-3, 3);
  FiniteWeightedAutomaton m(states, letters);
  for (std::size_t s = 0; s < states; ++s) {
    if (coin(rng) == 0)
      m.set_initial(s, value(rng));
    if (coin(rng) == 0)
      m.set_final(s, value(rng));
    for (std::size_t l = 0; l < letters; ++l)
      for (std::size_t t = 0; t < states; ++t)
        if (coin(rng) == 0)
          m.add_transition(s, l, t, value(rng));
  }
  return m;
}

void balance_rank_bench(benchmark::State &state)
{
  auto n = static_cast<std::size_t>(state.range(0));
  auto k = static_cast<std::size_t>(state.range(1));
  for (auto _ : state)
    benchmark::DoNotOptimize(balance_rank(n, k));
}
BENCHMARK(balance_rank_bench)->Args({8, 2})->Args({10, 3})->Args({10, 4})->Args({12, 4});

void finite_zeroness_bench(benchmark::State &state)
{
  auto m = random_finite(static_cast<std::size_t>(state.range(0)), 2, 7);
  for (auto _ : state)
    benchmark::DoNotOptimize(finite::zeroness(m));
}
BENCHMARK(finite_zeroness_bench)->Arg(8)->Arg(32)->Arg(64);

void finite_minimize_bench(benchmark::State &state)
{
  auto m = random_finite(static_cast<std::size_t>(state.range(0)), 2, 11);
  for (auto _ : state)
    benchmark::DoNotOptimize(finite::minimize(m));
}
BENCHMARK(finite_minimize_bench)->Arg(8)->Arg(32);

void decide_equivalence_bench(benchmark::State &state)
{
  auto a = count_letters();
  DecisionOptions options;
  options.atom_budget = static_cast<std::size_t>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(decide_equivalence(a, a, options));
}
BENCHMARK(decide_equivalence_bench)->Arg(4)->Arg(8)->Arg(32);

} // anonymous namespace

BENCHMARK_MAIN();
