#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "lexcourt/retrieval/bm25.hpp"
#include "lexcourt/retrieval/tokenizer.hpp"

using namespace lexcourt::retrieval;

namespace {

// Synthetic Chinese-like corpus: random ideographs from a small block so
// bigrams repeat across documents.
std::string random_text(std::mt19937& rng, int chars) {
  std::string out;
  for (int i = 0; i < chars; ++i) {
    const char32_t cp = 0x4E00 + rng() % 400;
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
  return out;
}

std::vector<Document> corpus(int n, int chars) {
  std::mt19937 rng(42);
  std::vector<Document> docs;
  for (int i = 0; i < n; ++i) docs.push_back({"d" + std::to_string(i), random_text(rng, chars)});
  return docs;
}

}  // namespace

static void BM_Tokenize(benchmark::State& state) {
  std::mt19937 rng(1);
  const auto text = random_text(rng, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(tokenize(text));
  state.SetBytesProcessed(static_cast<int64_t>(state.iterations()) * static_cast<int64_t>(text.size()));
}
BENCHMARK(BM_Tokenize)->Arg(200)->Arg(5000);

static void BM_Bm25Build(benchmark::State& state) {
  const auto docs = corpus(static_cast<int>(state.range(0)), 300);
  for (auto _ : state) benchmark::DoNotOptimize(Bm25Index::build(docs));
}
BENCHMARK(BM_Bm25Build)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

static void BM_Bm25Search(benchmark::State& state) {
  const auto index = Bm25Index::build(corpus(static_cast<int>(state.range(0)), 300));
  std::mt19937 rng(7);
  const auto query = random_text(rng, 60);
  for (auto _ : state) benchmark::DoNotOptimize(index.search(query, 100));
}
BENCHMARK(BM_Bm25Search)->Arg(1000)->Arg(10000)->Unit(benchmark::kMicrosecond);
