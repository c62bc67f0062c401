#include <benchmark/benchmark.h>

#include "qmf/period.hpp"

using namespace qmf;
using kernel::cplx;
using theta::FamilyName;

static void BM_BesselK0(benchmark::State& state) {
  double x = 0.37;
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernel::bessel_k0(x));
    x = x < 40.0 ? x * 1.01 : 0.37;
  }
}
BENCHMARK(BM_BesselK0);

static void BM_QuadFiniteSqrt(benchmark::State& state) {
  for (auto _ : state) {
    auto r = kernel::quad_finite([](double v) { return cplx(1.0 / (std::sqrt(v) * (1.0 + v))); },
                                 kernel::EndpointSingularity::inverse_sqrt_at_0, 1.0, {});
    benchmark::DoNotOptimize(r.value);
  }
}
BENCHMARK(BM_QuadFiniteSqrt);

static void BM_LSeries(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(qseries::l_series(qseries::SeriesId(7), state.range(0)));
}
BENCHMARK(BM_LSeries)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

static void BM_MockMaass(benchmark::State& state) {
  const auto& g = theta::family(FamilyName::G);
  for (auto _ : state) benchmark::DoNotOptimize(theta::mock_maass_value(g, 0, cplx(0.2, 0.5)));
}
BENCHMARK(BM_MockMaass)->Unit(benchmark::kMicrosecond);

static void BM_UValue(benchmark::State& state) {
  const double y = std::pow(10.0, -static_cast<double>(state.range(0)));
  period::u_value(FamilyName::G, cplx(11.0 / 12.0, y));  // warm the Fourier cache
  for (auto _ : state) benchmark::DoNotOptimize(period::u_value(FamilyName::G, cplx(11.0 / 12.0, y)).value);
}
BENCHMARK(BM_UValue)->DenseRange(1, 5)->Unit(benchmark::kMillisecond);

static void BM_QuantumValue(benchmark::State& state) {
  const auto x = modular::cusp_matrix(Rational(11, 34));
  period::quantum_value(FamilyName::G, x);
  for (auto _ : state) benchmark::DoNotOptimize(period::quantum_value(FamilyName::G, x).value);
}
BENCHMARK(BM_QuantumValue)->Unit(benchmark::kMillisecond);

static void BM_FoldMultiplier(benchmark::State& state) {
  const modular::Gamma02Element m(5, 2, 32, 13);
  const auto& h = theta::family(FamilyName::H);
  for (auto _ : state) benchmark::DoNotOptimize(modular::fold_multiplier(h, m).m);
}
BENCHMARK(BM_FoldMultiplier)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
