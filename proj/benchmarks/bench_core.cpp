#include <benchmark/benchmark.h>

#include "poncelet/abeljacobi.hpp"
#include "poncelet/conditions.hpp"
#include "poncelet/dynamics.hpp"
#include "poncelet/series.hpp"

using namespace poncelet;

static void BM_EllipticCoordinates(benchmark::State& state) {
  ConfocalFamily fam({9, 4, 1});
  std::vector<double> p = {1.2, -0.8, 0.4};
  for (auto _ : state) {
    EllipticCoords ec = elliptic_coordinates(fam, p);
    benchmark::DoNotOptimize(ec);
  }
}
BENCHMARK(BM_EllipticCoordinates);

static void BM_CausticParameters(benchmark::State& state) {
  ConfocalFamily fam({9, 4, 1});
  std::vector<double> base = {0.4, -0.9, 0.3}, dir = {0.5, 0.7, -0.4};
  for (auto _ : state) {
    CausticSet c = caustic_parameters(fam, base, dir);
    benchmark::DoNotOptimize(c);
  }
}
BENCHMARK(BM_CausticParameters);

static void BM_SimulateBounces(benchmark::State& state) {
  Domain dom{ConfocalFamily({9, 4, 1}), {Wall{0.0, 1}}};
  std::vector<double> p = {0.3, 0.2, 0.1}, v = {0.5, 0.4, 0.7};
  const int bounces = static_cast<int>(state.range(0));
  for (auto _ : state) {
    Trajectory t = simulate(dom, p, v, bounces);
    benchmark::DoNotOptimize(t);
  }
  state.SetItemsProcessed(state.iterations() * bounces);
}
BENCHMARK(BM_SimulateBounces)->Arg(10)->Arg(100);

static void BM_SqrtSeries(benchmark::State& state) {
  PrecisionGuard guard(288);
  Poly<BigReal> p = Poly<BigReal>::from_roots_neg({BigReal(4), BigReal(1), BigReal(0.5)});
  const int order = static_cast<int>(state.range(0));
  for (auto _ : state) {
    TruncatedSeries s = sqrt_of_poly(p, BigReal(0), 1, order, 256);
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_SqrtSeries)->Arg(8)->Arg(24);

static void BM_AlternatingClosureTest(benchmark::State& state) {
  PencilDiscriminant d{
      Poly<BigReal>::from_roots_neg({BigReal(4), BigReal(1), BigReal(0.5)})};
  const int m = static_cast<int>(state.range(0));
  for (auto _ : state) {
    ConditionReport r = corollary1_condition(d, BigReal(0.99), m, 128);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_AlternatingClosureTest)->Arg(3)->Arg(5);

static void BM_IncompleteIntegral(benchmark::State& state) {
  ConfocalFamily fam({4, 1});
  HyperellipticCurve g = curve_gamma(fam, {2.5});
  for (auto _ : state) {
    double v = incomplete_integral(g, 0, 2.5, 4.0);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_IncompleteIntegral);

BENCHMARK_MAIN();
