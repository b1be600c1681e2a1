#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>
#include <string>

#include "lceval/textmetrics.hpp"

namespace {

std::string load_paragraphs() {
  static const char* ids[] = {"u1", "u2", "u3", "u4", "u5",
                              "h1", "h2", "h3", "h4", "h5"};
  std::string all;
  for (const char* id : ids) {
    std::ifstream in(std::string(LCEVAL_DATA_DIR) + "/corpus/" + id +
                     ".paragraph.txt");
    std::ostringstream ss;
    ss << in.rdbuf();
    all += ss.str();
    all += "\n\n";
  }
  return all;
}

void BM_Tokenize(benchmark::State& state) {
  const std::string text = load_paragraphs();
  for (auto _ : state) {
    auto tokens = lceval::textmetrics::tokenize(text);
    benchmark::DoNotOptimize(tokens);
  }
  state.SetBytesProcessed(static_cast<int64_t>(state.iterations()) *
                          static_cast<int64_t>(text.size()));
}
BENCHMARK(BM_Tokenize);

void BM_SegmentSentences(benchmark::State& state) {
  const std::string text = load_paragraphs();
  for (auto _ : state) {
    auto spans = lceval::textmetrics::segment_sentences(text);
    benchmark::DoNotOptimize(spans);
  }
  state.SetBytesProcessed(static_cast<int64_t>(state.iterations()) *
                          static_cast<int64_t>(text.size()));
}
BENCHMARK(BM_SegmentSentences);

void BM_ComputeLix(benchmark::State& state) {
  const std::string text = load_paragraphs();
  for (auto _ : state) {
    auto breakdown = lceval::textmetrics::compute_lix(text);
    benchmark::DoNotOptimize(breakdown);
  }
  state.SetBytesProcessed(static_cast<int64_t>(state.iterations()) *
                          static_cast<int64_t>(text.size()));
}
BENCHMARK(BM_ComputeLix);

}  // namespace
