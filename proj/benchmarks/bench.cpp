// Microbenchmarks for the hot paths: cyclic banded solves, compact
// derivatives, RK stepping, and the 2D rotation step.

#include <benchmark/benchmark.h>

#include <random>

#include "dispfd/rk.hpp"
#include "dispfd/scheme.hpp"
#include "dispfd/transport1d.hpp"
#include "dispfd/transport2d.hpp"

namespace {

std::vector<double> random_field(int n) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> u(n);
  for (double& v : u) v = dist(rng);
  return u;
}

void BM_CyclicSolve(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto ops = dispfd::build_operators(dispfd::kll2nd(), n, 1.0 / n);
  auto u = random_field(n);
  for (auto _ : state) {
    auto x = ops.L.solve(std::span<const double>(u));
    benchmark::DoNotOptimize(x);
  }
}
BENCHMARK(BM_CyclicSolve)->Arg(128)->Arg(512)->Arg(2048);

void BM_CompactDerivative(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  dispfd::CompactDerivative deriv(dispfd::kll2nd(), n, 1.0 / n);
  auto u = random_field(n);
  for (auto _ : state) {
    auto up = deriv(std::span<const double>(u));
    benchmark::DoNotOptimize(up);
  }
}
BENCHMARK(BM_CompactDerivative)->Arg(128)->Arg(512)->Arg(2048);

void BM_RkStep(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  dispfd::CompactDerivative deriv(dispfd::unopt10th(), n, 1.0 / n);
  auto rk = dispfd::RKScheme::rk8();
  auto u = random_field(n);
  std::vector<double> stage, k;
  auto rhs = [&](std::span<const double> in, std::span<double> out) {
    auto up = deriv(in);
    for (int i = 0; i < n; ++i) out[i] = -up[i];
  };
  for (auto _ : state) {
    dispfd::rk_step(rk, rhs, u, 1e-4, stage, k);
    benchmark::DoNotOptimize(u);
  }
}
BENCHMARK(BM_RkStep)->Arg(128)->Arg(512);

void BM_RotationStep(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  dispfd::Grid2D g{n, 1.0, -0.5};
  auto u0 = dispfd::sample_ic_2d(g, dispfd::zalesak_ic);
  auto rk = dispfd::RKScheme::rk8();
  for (auto _ : state) {
    auto res =
        dispfd::solve_rotation(dispfd::kll2nd(), rk, g, u0, 0.001, 0.5);
    benchmark::DoNotOptimize(res.u.v);
  }
}
BENCHMARK(BM_RotationStep)->Arg(50)->Arg(100);

}  // namespace

BENCHMARK_MAIN();
