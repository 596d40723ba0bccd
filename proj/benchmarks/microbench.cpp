#include <benchmark/benchmark.h>

#include <vector>

#include "lineint/bench.hpp"
#include "lineint/double_integral.hpp"
#include "lineint/specfun.hpp"

namespace {

namespace bench = lineint::bench;

std::vector<bench::PairSample> pairs_for(int set_id) {
  return bench::generate_set(bench::SetSpec(set_id, 256, 6, 42));
}

void BM_Erf(benchmark::State& state) {
  double x = -6.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(lineint::specfun::erf(x));
    x = x > 6.0 ? -6.0 : x + 1e-3;
  }
}
BENCHMARK(BM_Erf);

void BM_BvnRect(benchmark::State& state) {
  const lineint::specfun::Correlation rho(0.6);
  double a = -1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(lineint::specfun::bvn_rect(a, a + 1.5, -0.5, 0.7, rho));
    a = a > 1.0 ? -1.0 : a + 1e-3;
  }
}
BENCHMARK(BM_BvnRect);

void BM_Method(benchmark::State& state, lineint::MethodChoice method) {
  const auto pairs = pairs_for(static_cast<int>(state.range(0)));
  std::size_t k = 0;
  for (auto _ : state) {
    const bench::PairSample& p = pairs[k];
    benchmark::DoNotOptimize(lineint::evaluate(p.line_i(), p.line_j(), p.v, method).value);
    k = (k + 1) % pairs.size();
  }
}
BENCHMARK_CAPTURE(BM_Method, proposed, lineint::MethodChoice::proposed())->DenseRange(1, 8);
BENCHMARK_CAPTURE(BM_Method, bivariate, lineint::MethodChoice::bivariate())->DenseRange(1, 8);
BENCHMARK_CAPTURE(BM_Method, simpson200, lineint::MethodChoice::simpson(200))->Arg(1);

}  // namespace

BENCHMARK_MAIN();
