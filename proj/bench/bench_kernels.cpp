#include <benchmark/benchmark.h>

#include "pricekit/cli.hpp"
#include "pricekit/constraints.hpp"
#include "pricekit/gen.hpp"
#include "pricekit/rules.hpp"

using namespace pricekit;

namespace {

struct Case {
  ApprovalProfile profile;
  Committee committee;
  PriceSystem ps;
};

Case make_case(int n, int m) {
  SeededRng rng(2026);
  auto e = gen_euclidean_vcr(n, m, rng);
  auto w = random_committee(e.profile, m / 2, rng);
  auto ps = equal_split(e.profile, w);
  return {e.profile, w, ps};
}

template <ConstraintValues (*Eval)(const StabilityConstraints&, const PriceSystem&)>
void BM_constraints(benchmark::State& state) {
  Case c = make_case(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  StabilityConstraints sc(c.profile, c.committee);
  for (auto _ : state) benchmark::DoNotOptimize(Eval(sc, c.ps));
  state.counters["pairs"] = static_cast<double>(sc.outsider_count()) * sc.member_count();
}

ExperimentConfig bench_config() {
  ExperimentConfig c;
  c.count = 8;
  c.seed = 7;
  c.n_min = c.m_min = 20;
  c.n_max = c.m_max = 40;
  return c;
}

void BM_ejr_parallel(benchmark::State& state) {
  auto c = bench_config();
  for (auto _ : state) benchmark::DoNotOptimize(run_ejr_experiment(c));
  state.counters["workers"] = effective_workers(c.workers);
}

void BM_ejr_serial(benchmark::State& state) {
  auto c = bench_config();
  for (auto _ : state) benchmark::DoNotOptimize(run_ejr_experiment_serial(c));
}

}  // namespace

BENCHMARK(BM_constraints<evaluate_constraints>)->Name("constraints/parallel")->Args({100, 100})->Args({400, 200});
BENCHMARK(BM_constraints<evaluate_constraints_serial>)->Name("constraints/serial")->Args({100, 100})->Args({400, 200});
BENCHMARK(BM_ejr_parallel)->Name("ejr_experiment/parallel")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ejr_serial)->Name("ejr_experiment/serial")->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
