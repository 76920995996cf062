#include <benchmark/benchmark.h>

#include <cstdint>

#include "skinspec/linalg.hpp"
#include "skinspec/resonator.hpp"
#include "skinspec/symbol.hpp"

using namespace skinspec;

namespace {

SymbolCoeffs coburn() { return SymbolCoeffs::make({0.0, 1.0}, {1.0, 0.5}, {1.0, 0.5}); }

CMatrix dense_section(std::int64_t n) {
  const ResonatorChain chain = ResonatorChain::periodic(static_cast<std::size_t>(n), {1.0, 2.0, 3.0});
  return capacitance_matrix(chain);
}

}  // namespace

static void BM_EigDense(benchmark::State& state) {
  const CMatrix a = dense_section(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(eig_dense(a));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_EigDense)->RangeMultiplier(2)->Range(16, 128)->Complexity(benchmark::oNCubed)->Unit(benchmark::kMillisecond);

// One node of a pseudospectrum grid: a full SVD against the cached-factorization path.
static void BM_SigmaMinSvd(benchmark::State& state) {
  const CMatrix a = finite_section(coburn(), static_cast<std::size_t>(state.range(0)));
  const Complex lambda(0.3, 0.1);
  for (auto _ : state) benchmark::DoNotOptimize(smallest_singular_value(a.shifted(lambda)));
}
BENCHMARK(BM_SigmaMinSvd)->Arg(50)->Arg(100)->Arg(200)->Unit(benchmark::kMicrosecond);

static void BM_SigmaMinShifted(benchmark::State& state) {
  const ShiftedSigmaMin sigma(finite_section(coburn(), static_cast<std::size_t>(state.range(0))));
  const Complex lambda(0.3, 0.1);
  for (auto _ : state) benchmark::DoNotOptimize(sigma(lambda));
}
BENCHMARK(BM_SigmaMinShifted)->Arg(50)->Arg(100)->Arg(200)->Unit(benchmark::kMicrosecond);

static void BM_SigmaMinDenseShifted(benchmark::State& state) {
  const ShiftedSigmaMin sigma(dense_section(state.range(0)));
  const Complex lambda(1.5, 0.2);
  for (auto _ : state) benchmark::DoNotOptimize(sigma(lambda));
}
BENCHMARK(BM_SigmaMinDenseShifted)->Arg(50)->Arg(100)->Unit(benchmark::kMicrosecond);

static void BM_PolyRoots(benchmark::State& state) {
  CVector coeffs(static_cast<std::size_t>(state.range(0)) + 1);
  for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] = Complex(1.0 / (1.0 + i), 0.5 - 0.1 * i);
  for (auto _ : state) benchmark::DoNotOptimize(poly_roots(coeffs));
}
BENCHMARK(BM_PolyRoots)->Arg(4)->Arg(16)->Arg(64);
