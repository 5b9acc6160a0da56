#include <benchmark/benchmark.h>

#include "relaybf/relaybf.hpp"

namespace {

relaybf::ProblemInstance full_size_instance(double rate) {
  relaybf::Rng rng(20211005);
  return relaybf::gen_instance({8, 10, 3.0, 1.0, rate}, rng);
}

void BM_BetaMap(benchmark::State& state) {
  const auto inst = full_size_instance(1.0);
  const std::vector<double> beta(static_cast<std::size_t>(inst.users()), 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(relaybf::beta_map(inst, beta));
}
BENCHMARK(BM_BetaMap);

void BM_SolveDual(benchmark::State& state) {
  const auto inst = full_size_instance(static_cast<double>(state.range(0)) / 10.0);
  for (auto _ : state) benchmark::DoNotOptimize(relaybf::solve_dual(inst));
}
BENCHMARK(BM_SolveDual)->Arg(2)->Arg(6)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_Solve(benchmark::State& state) {
  const auto inst = full_size_instance(static_cast<double>(state.range(0)) / 10.0);
  for (auto _ : state) benchmark::DoNotOptimize(relaybf::solve(inst));
}
BENCHMARK(BM_Solve)->Arg(2)->Arg(6)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_Certify(benchmark::State& state) {
  const auto inst = full_size_instance(1.0);
  const auto out = relaybf::solve(inst);
  for (auto _ : state) benchmark::DoNotOptimize(relaybf::certify(inst, *out.primal, *out.dual));
}
BENCHMARK(BM_Certify)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
