#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "lceval/alignment.hpp"

namespace {

std::vector<std::string> make_tokens(int n, uint64_t seed) {
  std::mt19937_64 rng(seed);
  static const char* alphabet = "abdefghiklmnoprstuv";
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) {
    std::string w;
    const int len = 2 + static_cast<int>(rng() % 9);
    for (int k = 0; k < len; ++k) w += alphabet[rng() % 19];
    out.push_back(w);
  }
  return out;
}

// identical streams: the fast path without the edit-distance table
void BM_AlignIdentity(benchmark::State& state) {
  auto forms = make_tokens(static_cast<int>(state.range(0)), 1);
  for (auto _ : state) {
    auto map = lceval::deptree::align_tokens(forms, forms);
    benchmark::DoNotOptimize(map);
  }
}
BENCHMARK(BM_AlignIdentity)->Arg(16)->Arg(64)->Arg(256);

// divergent tokenization: drops and merges force the projection path
void BM_AlignDivergent(benchmark::State& state) {
  auto gold = make_tokens(static_cast<int>(state.range(0)), 2);
  std::vector<std::string> pred;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    if (i % 7 == 3 && i + 1 < gold.size()) {
      pred.push_back(gold[i] + gold[i + 1]);
      ++i;
    } else if (i % 11 != 5) {
      pred.push_back(gold[i]);
    }
  }
  for (auto _ : state) {
    auto map = lceval::deptree::align_tokens(gold, pred, {0.5});
    benchmark::DoNotOptimize(map);
  }
}
BENCHMARK(BM_AlignDivergent)->Arg(16)->Arg(64)->Arg(256);

}  // namespace
