#include <benchmark/benchmark.h>

#include "sgmc/expansions.hpp"
#include "sgmc/kleene.hpp"
#include "sgmc/markov.hpp"
#include "sgmc/pipeline.hpp"

namespace {

using namespace sgmc;

// Reflections of a square acting on its corners, optionally with an identity letter.
MarkovChainSpec dihedral(bool with_identity) {
  MarkovChainSpec spec;
  spec.states = {"0", "1", "2", "3"};
  Rational p = with_identity ? Rational(1, 3) : Rational(1, 2);
  spec.generators.push_back({"a", Transformation{{1, 0, 3, 2}}, p});
  spec.generators.push_back({"b", Transformation{{3, 2, 1, 0}}, p});
  if (with_identity) spec.generators.push_back({"c", Transformation{{0, 1, 2, 3}}, p});
  return spec;
}

MarkovChainSpec two_state() {
  MarkovChainSpec spec;
  spec.states = {"x", "y"};
  spec.generators.push_back({"1", Transformation{{0, 0}}, Rational(1, 3)});
  spec.generators.push_back({"2", Transformation{{1, 1}}, Rational(1, 3)});
  spec.generators.push_back({"3", Transformation{{1, 0}}, Rational(1, 3)});
  return spec;
}

void BM_Generate(benchmark::State& state) {
  auto specs = dihedral(state.range(0) != 0).generator_specs();
  for (auto _ : state) benchmark::DoNotOptimize(generate(specs));
}
BENCHMARK(BM_Generate)->Arg(0)->Arg(1);

void BM_KrExpand(benchmark::State& state) {
  auto s = generate(dihedral(state.range(0) != 0).generator_specs());
  for (auto _ : state) benchmark::DoNotOptimize(kr_expand(s));
}
BENCHMARK(BM_KrExpand)->Arg(0)->Arg(1);

void BM_McExpand(benchmark::State& state) {
  auto kr = kr_expand(adjoin_zero(generate(dihedral(state.range(0) != 0).generator_specs())));
  for (auto _ : state) benchmark::DoNotOptimize(mc_expand(kr));
}
BENCHMARK(BM_McExpand)->Arg(0)->Arg(1);

void BM_Stationary(benchmark::State& state) {
  auto s = generate(state.range(0) == 2 ? two_state().generator_specs()
                                        : dihedral(state.range(0) != 0).generator_specs());
  for (auto _ : state) benchmark::DoNotOptimize(stationary(s));
}
BENCHMARK(BM_Stationary)->Arg(0)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

const TerminalResult& longest_terminal(const StationaryResult& r) {
  const TerminalResult* best = &r.terminals.front();
  for (const auto& t : r.terminals) {
    if (t.word.size() > best->word.size()) best = &t;
  }
  return *best;
}

void BM_Series(benchmark::State& state) {
  auto r = stationary(generate(dihedral(true).generator_specs()));
  const auto& psi = longest_terminal(r).psi;
  auto order = static_cast<std::uint32_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(rf_series(psi, order));
}
BENCHMARK(BM_Series)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_KleeneEnumerate(benchmark::State& state) {
  auto r = stationary(generate(dihedral(true).generator_specs()));
  const auto& e = longest_terminal(r).expression;
  auto len = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(kleene_enumerate(e, len));
}
BENCHMARK(BM_KleeneEnumerate)->Arg(6)->Arg(9)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
