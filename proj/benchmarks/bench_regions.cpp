#include <benchmark/benchmark.h>

#include "skinspec/spectra.hpp"
#include "skinspec/symbol.hpp"
#include "skinspec/winding.hpp"

using namespace skinspec;

namespace {

SymbolCoeffs trimer() {
  return SymbolCoeffs::make({0.3, -1.0, 2.0}, {1.0, 0.5, 2.0}, {0.25, 1.5, 0.7});
}

}  // namespace

static void BM_WindingAtRadius(benchmark::State& state) {
  const SymbolCoeffs s = trimer();
  const Complex lambda(0.4, 0.2);
  for (auto _ : state) benchmark::DoNotOptimize(winding_at_radius(s, lambda, 1.0));
}
BENCHMARK(BM_WindingAtRadius);

static void BM_WindingViaArgument(benchmark::State& state) {
  const SymbolCoeffs s = trimer();
  const Complex lambda(0.4, 0.2);
  for (auto _ : state) benchmark::DoNotOptimize(winding_via_argument(s, lambda, 1.0, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_WindingViaArgument)->Arg(256)->Arg(4096);

static void BM_InRegionG(benchmark::State& state) {
  const SymbolCoeffs s = trimer();
  const Complex lambda(0.4, 0.2);
  for (auto _ : state) benchmark::DoNotOptimize(in_region_G(s, lambda));
}
BENCHMARK(BM_InRegionG);

static void BM_SigmaDetSample(benchmark::State& state) {
  const SymbolCoeffs s = trimer();
  for (auto _ : state) benchmark::DoNotOptimize(sigma_det_sample(s, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_SigmaDetSample)->Arg(512)->Arg(4096);

static void BM_ClassifyRegionGrid(benchmark::State& state) {
  const SymbolCoeffs s = trimer();
  const GridSpec grid = default_grid(sigma_det_sample(s, 512), static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(classify_region_grid(s, grid, 1));
}
BENCHMARK(BM_ClassifyRegionGrid)->Arg(64)->Arg(201)->Unit(benchmark::kMillisecond);

static void BM_PseudospectrumGrid(benchmark::State& state) {
  const CMatrix a = finite_section(trimer(), 60);
  const GridSpec grid = default_grid(sigma_det_sample(trimer(), 512), 48);
  for (auto _ : state) benchmark::DoNotOptimize(pseudospectrum_grid(a, grid, static_cast<unsigned>(state.range(0))));
}
BENCHMARK(BM_PseudospectrumGrid)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();
