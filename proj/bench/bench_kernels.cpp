// Microbenchmarks comparing the serial reference kernels against the
// OpenMP-parallel ones.  Both variants are always registered so the comparison
// stays meaningful on machines without OpenMP (the parallel entry then runs
// the fallback path).

#include <benchmark/benchmark.h>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "nc/kernels.hpp"
#include "nc/partition.hpp"

namespace {

using nc::ExecPolicy;

std::vector<double> make_samples(std::size_t n) {
  std::vector<double> samples(n);
  std::mt19937_64 gen(12345);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (double& x : samples) x = dist(gen);
  return samples;
}

std::vector<std::complex<double>> make_unit_samples(std::size_t n) {
  std::vector<std::complex<double>> samples(n);
  std::mt19937_64 gen(54321);
  std::uniform_real_distribution<double> dist(0.0, 6.28318530717958647692);
  for (auto& z : samples) z = std::polar(1.0, dist(gen));
  return samples;
}

void bm_dft(benchmark::State& state, ExecPolicy policy) {
  auto samples = make_samples(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto coeffs = nc::dft_truncated(samples, 64, policy);
    benchmark::DoNotOptimize(coeffs);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void bm_partition_unit(benchmark::State& state, ExecPolicy policy) {
  nc::PartitionOfUnity p =
      nc::build_partition_of_unity(5, static_cast<long long>(state.range(0)));
  for (auto _ : state) {
    double r = nc::partition_unit_residual(p.functions, policy);
    benchmark::DoNotOptimize(r);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void bm_partition_rotation(benchmark::State& state, ExecPolicy policy) {
  long long grid = state.range(0);  // power of two, divisible by the 4 sheets
  nc::PartitionOfUnity p = nc::build_partition_of_unity(4, grid);
  for (auto _ : state) {
    double r = nc::partition_rotation_residual(p.functions, grid / 4, policy);
    benchmark::DoNotOptimize(r);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void bm_winding(benchmark::State& state, ExecPolicy policy) {
  auto samples = make_unit_samples(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto result = nc::winding_increments(samples, policy);
    benchmark::DoNotOptimize(result);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK_CAPTURE(bm_dft, serial, ExecPolicy::Serial)->Arg(1 << 12)->Arg(1 << 15);
BENCHMARK_CAPTURE(bm_dft, parallel, ExecPolicy::Parallel)->Arg(1 << 12)->Arg(1 << 15);
BENCHMARK_CAPTURE(bm_partition_unit, serial, ExecPolicy::Serial)->Arg(1 << 15)->Arg(1 << 18);
BENCHMARK_CAPTURE(bm_partition_unit, parallel, ExecPolicy::Parallel)->Arg(1 << 15)->Arg(1 << 18);
BENCHMARK_CAPTURE(bm_partition_rotation, serial, ExecPolicy::Serial)->Arg(1 << 15)->Arg(1 << 18);
BENCHMARK_CAPTURE(bm_partition_rotation, parallel, ExecPolicy::Parallel)->Arg(1 << 15)->Arg(1 << 18);
BENCHMARK_CAPTURE(bm_winding, serial, ExecPolicy::Serial)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK_CAPTURE(bm_winding, parallel, ExecPolicy::Parallel)->Arg(1 << 16)->Arg(1 << 20);

BENCHMARK_MAIN();
