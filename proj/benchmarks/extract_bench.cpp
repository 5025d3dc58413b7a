#include <benchmark/benchmark.h>

#include <string>

#include "lexcourt/metrics/extract.hpp"
#include "lexcourt/metrics/numerals.hpp"

using namespace lexcourt::metrics;

namespace {

const std::string kJudgment =
    "依照《中华人民共和国刑法》第二百六十四条、第二百六十六条、第六十九条之规定，判决如下：被告人施某犯盗窃罪，"
    "判处有期徒刑一年，并处罚金人民币三千元；犯诈骗罪，判处有期徒刑二年，并处罚金人民币五千元，决定执行有期徒刑二年"
    "六个月，并处罚金人民币八千元。";

}  // namespace

static void BM_ExtractCriminal(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(extract_criminal(kJudgment));
}
BENCHMARK(BM_ExtractCriminal)->Unit(benchmark::kMicrosecond);

static void BM_ExtractArticles(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(extract_article_refs(kJudgment));
}
BENCHMARK(BM_ExtractArticles)->Unit(benchmark::kMicrosecond);

static void BM_ParseNumeral(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(parse_chinese_number("一千二百三十四万五千六百七十八"));
}
BENCHMARK(BM_ParseNumeral);
