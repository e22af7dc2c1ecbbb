#include <benchmark/benchmark.h>

#include "nonparax/kernel.hpp"
#include "nonparax/model.hpp"
#include "nonparax/propagate.hpp"

namespace {

using namespace nonparax;

ComplexField packet(int n) {
  return gaussian_packet(GridSpec(n, -40.0, 40.0), 2.0);
}

void BM_SpectralStep(benchmark::State& state) {
  const ComplexField psi = packet(static_cast<int>(state.range(0)));
  const PropagationParams p = PropagationParams::direct(0.004);
  for (auto _ : state) {
    PropagationResult r = spectral_step(psi, 1.0, p);
    benchmark::DoNotOptimize(r.field.values.data());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SpectralStep)->RangeMultiplier(2)->Range(1024, 16384)->Complexity();

// n < 4096 runs the direct O(n^2) sum, n >= 4096 the zero-padded FFT path;
// the two registrations keep the ranges on their own side of the switch.
void BM_KernelConvolveDirect(benchmark::State& state) {
  const ComplexField psi = packet(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    PropagationResult r = kernel_convolve(psi, 1.0, 0.004);
    benchmark::DoNotOptimize(r.field.values.data());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_KernelConvolveDirect)
    ->RangeMultiplier(2)
    ->Range(512, 2048)
    ->Complexity();

void BM_KernelConvolveFFT(benchmark::State& state) {
  const ComplexField psi = packet(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    PropagationResult r = kernel_convolve(psi, 1.0, 0.004);
    benchmark::DoNotOptimize(r.field.values.data());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_KernelConvolveFFT)
    ->RangeMultiplier(2)
    ->Range(4096, 16384)
    ->Complexity();

void BM_KernelClosedFormLattice(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  for (auto _ : state) {
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        KernelQuery q{0.0, 0.1 * i, 0.4 + 0.1 * j, 0.004,
                      KernelMethod::ClosedForm};
        benchmark::DoNotOptimize(kernel_closed_form(q).value);
      }
    }
  }
  state.SetItemsProcessed(state.iterations() * m * m);
}
BENCHMARK(BM_KernelClosedFormLattice)->Arg(20);

void BM_KernelQuadrature(benchmark::State& state) {
  const KernelQuery q{0.0, 1.0, 1.0, 0.01, KernelMethod::Quadrature};
  const int n_quad = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(kernel_quadrature(q, 12.0, n_quad).value);
  state.SetItemsProcessed(state.iterations() * n_quad);
}
BENCHMARK(BM_KernelQuadrature)->RangeMultiplier(4)->Range(1024, 65536);

void BM_FftRoundTrip(benchmark::State& state) {
  const ComplexField psi = packet(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    ComplexField back = to_physical(to_spectral(psi));
    benchmark::DoNotOptimize(back.values.data());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_FftRoundTrip)->RangeMultiplier(2)->Range(1024, 16384)->Complexity();

}  // namespace

BENCHMARK_MAIN();
