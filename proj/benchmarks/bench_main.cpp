#include <benchmark/benchmark.h>

#include "pgamma/classical.hpp"
#include "pgamma/nabla.hpp"

using namespace pgamma;
using namespace pgamma::nabla;

namespace {

void BM_NablaDirect(benchmark::State& state) {
  const auto p = params_from<double>(100, 1, 0.25, Regime::toy, static_cast<int>(state.range(0)) - 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(nabla_direct<double>({2.0, 0.75}, p));
  }
  state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << state.range(0)));
}
BENCHMARK(BM_NablaDirect)->Arg(12)->Arg(18)->Arg(24)->Unit(benchmark::kMillisecond);

void BM_NablaClosedPaper(benchmark::State& state) {
  const auto p = params_from<Quad>(Quad(2 * kT0 - 1), 1, 0.25, Regime::paper);
  for (auto _ : state) {
    benchmark::DoNotOptimize(nabla_closed<Quad>({Quad(1.25), Quad(0)}, p));
  }
}
BENCHMARK(BM_NablaClosedPaper)->Unit(benchmark::kMicrosecond);

void BM_NablaClosedToy(benchmark::State& state) {
  const auto p = params_from<double>(1000, 1, 0.25, Regime::toy, 12);
  for (auto _ : state) {
    benchmark::DoNotOptimize(nabla_closed<double>({2.0, 0.75}, p));
  }
}
BENCHMARK(BM_NablaClosedToy);

void BM_Theorem1Paper(benchmark::State& state) {
  const auto p = params_from<Quad>(Quad(2 * kT0 - 1), 1, 0.25, Regime::paper);
  const auto grid = GridSpec::half_open_unit(64);
  for (auto _ : state) {
    benchmark::DoNotOptimize(theorem1_check(p, grid));
  }
}
BENCHMARK(BM_Theorem1Paper)->Unit(benchmark::kMillisecond);

void BM_ZetaHasse(benchmark::State& state) {
  const classical::Complex s(0.5, static_cast<double>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(classical::zeta_hasse(s, {}));
  }
}
BENCHMARK(BM_ZetaHasse)->Arg(1)->Arg(14)->Arg(50)->Unit(benchmark::kMicrosecond);

void BM_GammaWeierstrass(benchmark::State& state) {
  const classical::Complex s(0.25, static_cast<double>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(classical::gamma_weierstrass(s, {}));
  }
}
BENCHMARK(BM_GammaWeierstrass)->Arg(1)->Arg(10)->Arg(100)->Unit(benchmark::kMicrosecond);

void BM_Xi(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(classical::xi({0.3, 7.0}, {}));
  }
}
BENCHMARK(BM_Xi)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
