// Serial reference against the OpenMP path for each data-parallel kernel.
// Arg 0 is Execution::Serial, arg 1 Execution::Parallel.
#include <benchmark/benchmark.h>

#include "ifsaddr/conditions.hpp"
#include "ifsaddr/engine.hpp"
#include "ifsaddr/measure.hpp"

using namespace ifsaddr;

namespace {

IfsSystem triangle(double lambda) { return IfsSystem(lambda, {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}}); }

Execution exec_of(const benchmark::State& state) { return state.range(0) == 0 ? Execution::Serial : Execution::Parallel; }

void BM_CoveringDeficiency(benchmark::State& state) {
  const auto sys = triangle(0.55);
  for (auto _ : state) benchmark::DoNotOptimize(covering_deficiency(sys, 6, 4000, 1, exec_of(state)));
}

void BM_WnCoverage(benchmark::State& state) {
  const auto sys = triangle(0.7);
  const auto fam = BlockFamily::from_witness(sys, *vertex_overlap_witness(sys));
  for (auto _ : state) benchmark::DoNotOptimize(wn_coverage_curve(sys, fam, 10, 4000, 2, true, exec_of(state)));
}

void BM_MuBifurcation(benchmark::State& state) {
  const auto s = MeasureSampler::uniform(triangle(0.7), 3);
  for (auto _ : state) benchmark::DoNotOptimize(mu_bifurcation_fraction(s, 4000, 40, true, exec_of(state)));
}

void BM_MeshCount(benchmark::State& state) {
  const auto pts = chaos_game(triangle(0.5), 500000, 1000, 4);
  for (auto _ : state) benchmark::DoNotOptimize(mesh_count(pts, 1.0 / 256, exec_of(state)));
}

void BM_UniquenessGrid(benchmark::State& state) {
  const auto sys = triangle(0.6);
  for (auto _ : state) benchmark::DoNotOptimize(uniqueness_grid(sys, 128, 30, exec_of(state)));
}

void BM_EnumeratePrefixes(benchmark::State& state) {
  const auto sys = triangle(0.7);
  const std::vector<double> x{0.3, 0.35};
  SearchOptions opts;
  opts.mode = FeasibilityMode::ExactNoHoles;
  opts.no_holes_certified = true;
  opts.node_budget = 10'000'000;
  opts.exec = exec_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_prefixes(sys, x, 22, opts));
}

}  // namespace

BENCHMARK(BM_CoveringDeficiency)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_WnCoverage)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MuBifurcation)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MeshCount)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_UniquenessGrid)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EnumeratePrefixes)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
