#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "lceval/stats.hpp"

namespace {

void BM_Pearson(benchmark::State& state) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> dist(0, 100);
  const int n = static_cast<int>(state.range(0));
  std::vector<double> xs(n), ys(n);
  for (int i = 0; i < n; ++i) {
    xs[i] = dist(rng);
    ys[i] = 0.7 * xs[i] + dist(rng);
  }
  for (auto _ : state) {
    auto r = lceval::stats::pearson(xs, ys);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_Pearson)->Arg(6)->Arg(100)->Arg(10000);

void BM_StudentTTwoTailedP(benchmark::State& state) {
  double t = 0.1;
  for (auto _ : state) {
    double p = lceval::stats::student_t_two_tailed_p(t, 4);
    benchmark::DoNotOptimize(p);
    t += 0.01;
    if (t > 12.0) t = 0.1;
  }
}
BENCHMARK(BM_StudentTTwoTailedP);

}  // namespace
