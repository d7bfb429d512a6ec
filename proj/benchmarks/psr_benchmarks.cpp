#include <complex>
#include <random>

#include <benchmark/benchmark.h>

#include "psr/atomic.hpp"
#include "psr/cavity.hpp"
#include "psr/ising.hpp"

namespace {

using namespace psr;

Medium medium_with_gain(double gl) {
  return Medium{AtomicParams::from_delta(0.1, gain_scale_for(0.1, 10.0, gl)), 10.0};
}

CavityParams cavity_at(double eta, double gl) {
  CavityParams cav;
  cav.eta = eta;
  cav.psi = optimal_phase(gl);
  return cav;
}

void BM_SteadyState(benchmark::State& state) {
  AtomicParams p;
  p.gamma_big = 1.0;
  p.gamma_small = 0.1;
  p.detuning = 0.3;
  const DriveField d{{0.4, 0.1}, {0.2, -0.3}};
  for (auto _ : state) benchmark::DoNotOptimize(steady_state(p, d));
}
BENCHMARK(BM_SteadyState);

void BM_Roundtrip(benchmark::State& state) {
  const Medium medium = medium_with_gain(1.0);
  const CavityParams cav = cavity_at(0.9, 1.0);
  PolarizationState s(1.0, std::complex<double>{1e-3, 2e-3});
  for (auto _ : state) {
    s = roundtrip(s, 1.0, cav, medium);
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_Roundtrip);

void BM_RunToSteadyState(benchmark::State& state) {
  const Medium medium = medium_with_gain(1.0);
  const CavityParams cav = cavity_at(0.9, 1.0);
  std::uint64_t seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(run_to_steady_state(1.0, cav, medium, seed++));
}
BENCHMARK(BM_RunToSteadyState);

void BM_ScanMaxSpectralRadius(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(scan_max_spectral_radius(0.5, 0.8));
}
BENCHMARK(BM_ScanMaxSpectralRadius);

void BM_BruteForceGroundState(benchmark::State& state) {
  const auto n = static_cast<Eigen::Index>(state.range(0));
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  IsingProblem p;
  p.j = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index k = i + 1; k < n; ++k) p.j(i, k) = p.j(k, i) = u(rng);
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_ground_state(p));
}
BENCHMARK(BM_BruteForceGroundState)->DenseRange(8, 20, 4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
