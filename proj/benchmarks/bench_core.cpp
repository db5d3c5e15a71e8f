#include <benchmark/benchmark.h>

#include "betafreeze/density.hpp"
#include "betafreeze/ensembles.hpp"
#include "betafreeze/fluctuations.hpp"
#include "betafreeze/rng.hpp"
#include "betafreeze/trieig.hpp"

using namespace betafreeze;

static void BM_SampleHermiteSpectrum(benchmark::State& state) {
  const EnsembleSpec spec = EnsembleSpec::hermite(static_cast<std::size_t>(state.range(0)), 10.0);
  RngStream rng(42);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_spectrum(spec, rng));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_SampleHermiteSpectrum)->Arg(4)->Arg(16)->Arg(64);

static void BM_SampleLaguerreSpectrum(benchmark::State& state) {
  const EnsembleSpec spec =
      EnsembleSpec::laguerre_from_gamma(static_cast<std::size_t>(state.range(0)), 10.0, 1.0);
  RngStream rng(42);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_spectrum(spec, rng));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_SampleLaguerreSpectrum)->Arg(4)->Arg(16)->Arg(64);

static void BM_EighTridiagonalValues(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  RngStream rng(7);
  TridiagonalSym t;
  t.diag.resize(n);
  t.offdiag.resize(n - 1);
  for (double& v : t.diag) v = 2.0 * rng.uniform01() - 1.0;
  for (double& v : t.offdiag) v = 2.0 * rng.uniform01() - 1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(eigh_tridiagonal(t, false));
  }
}
BENCHMARK(BM_EighTridiagonalValues)->Arg(64)->Arg(256)->Arg(1024);

static void BM_HermiteFluctuationModel(benchmark::State& state) {
  const std::size_t k = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(hermite_fluctuation_model(k));
  }
}
BENCHMARK(BM_HermiteFluctuationModel)->Arg(8)->Arg(32)->Arg(128);

static void BM_ExactLevelDensity(benchmark::State& state) {
  const std::size_t k = static_cast<std::size_t>(state.range(0));
  double x = -1.25;
  for (auto _ : state) {
    benchmark::DoNotOptimize(exact_level_density_beta2(k, x));
    x = x >= 1.25 ? -1.25 : x + 1e-3;
  }
}
BENCHMARK(BM_ExactLevelDensity)->Arg(4)->Arg(64);

BENCHMARK_MAIN();
