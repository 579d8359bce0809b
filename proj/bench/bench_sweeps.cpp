// Serial reference sweeps against the OpenMP paths on the same inputs.
#include <benchmark/benchmark.h>

#include <vector>

#include "cauchylab/commutator.hpp"
#include "cauchylab/operator.hpp"
#include "cauchylab/parallel.hpp"
#include "cauchylab/reference.hpp"

using namespace cauchylab;

namespace {

struct Setup {
  CauchyKernel kernel{LipschitzCurve::sawtooth(1.0, 4.0)};
  SampledFunction f;
  Grid lattice;
  std::vector<double> points;

  explicit Setup(std::size_t cells) {
    f = RealFunction::bump(0.0, 1.0).sample(Grid::cell_centered(-1.0, 1.0, cells));
    lattice = midpoint_lattice(f.grid(), -2.0, 2.0);
    for (std::size_t i = 0; i < lattice.count; ++i) points.push_back(lattice.node(i));
  }
};

void BM_pv_reference(benchmark::State& st) {
  const Setup s(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(reference::pv_sweep(s.kernel, s.f, s.points));
  st.SetItemsProcessed(st.iterations() * static_cast<long long>(s.points.size() * s.f.size()));
}

void BM_pv_parallel(benchmark::State& st) {
  const Setup s(static_cast<std::size_t>(st.range(0)));
  set_threads(static_cast<int>(st.range(1)));
  const auto cfg = PvConfig::for_grid(s.f.grid(), 1, Exclusion::NodeSkip);
  for (auto _ : st) benchmark::DoNotOptimize(apply_pv(s.kernel, s.f, s.lattice, cfg));
  st.SetItemsProcessed(st.iterations() * static_cast<long long>(s.points.size() * s.f.size()));
}

void BM_commutator_reference(benchmark::State& st) {
  const Setup s(static_cast<std::size_t>(st.range(0)));
  const auto b = RealFunction::truncated_log();
  for (auto _ : st) benchmark::DoNotOptimize(reference::commutator_sweep(s.kernel, b, s.f, s.points));
  st.SetItemsProcessed(st.iterations() * static_cast<long long>(s.points.size() * s.f.size()));
}

void BM_commutator_parallel(benchmark::State& st) {
  const Setup s(static_cast<std::size_t>(st.range(0)));
  set_threads(static_cast<int>(st.range(1)));
  const auto b = RealFunction::truncated_log();
  for (auto _ : st) benchmark::DoNotOptimize(apply_commutator(b, s.f, s.kernel, s.lattice));
  st.SetItemsProcessed(st.iterations() * static_cast<long long>(s.points.size() * s.f.size()));
}

}  // namespace

BENCHMARK(BM_pv_reference)->Arg(512)->Arg(2048)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_pv_parallel)->ArgsProduct({{512, 2048}, {1, 2, 4}})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_commutator_reference)->Arg(512)->Arg(2048)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_commutator_parallel)->ArgsProduct({{512, 2048}, {1, 2, 4}})->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
