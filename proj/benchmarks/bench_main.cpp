#include <benchmark/benchmark.h>

#include "tubeduality/decomposition.hpp"
#include "tubeduality/duality.hpp"

using namespace tubeduality;

namespace {

const char* const kModels[] = {"ising", "xxz", "rep_z2", "rep_z3", "rep_s3"};

void BM_Assemble(benchmark::State& state) {
  const ModelSpec& m = model_by_name(kModels[state.range(0)]);
  const int L = int(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(assemble(m, L, {{0, 0}}));
  state.SetLabel(m.name);
}
BENCHMARK(BM_Assemble)->ArgsProduct({{0, 1, 2, 3, 4}, {6, 8, 10}})->Unit(benchmark::kMillisecond);

void BM_TubeCompose(benchmark::State& state) {
  auto sys = sector_system(model_by_name("xxz"));
  const TubeAlgebra& alg = sys->algebra;
  for (auto _ : state)
    for (int i = 0; i < alg.size(); ++i)
      for (int j = 0; j < alg.size(); ++j) benchmark::DoNotOptimize(alg.compose(i, j));
  state.SetItemsProcessed(state.iterations() * alg.size() * alg.size());
}
BENCHMARK(BM_TubeCompose);

void BM_SectorDecompose(benchmark::State& state) {
  const ModelSpec& m = model_by_name("rep_z2");
  auto sys = sector_system(m);
  const AssembledModel a = assemble(m, int(state.range(0)), {{2, 0}});
  for (auto _ : state) benchmark::DoNotOptimize(sector_decompose(*sys, a.space, a.hamiltonian));
}
BENCHMARK(BM_SectorDecompose)->DenseRange(4, 7)->Unit(benchmark::kMillisecond);

void BM_VerifyDuality(benchmark::State& state) {
  const ModelSpec &src = model_by_name("rep_z2"), &dst = model_by_name("xxz");
  const int L = int(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(verify_duality(src, dst, L));
}
BENCHMARK(BM_VerifyDuality)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
