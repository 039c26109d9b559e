// Copyright 2026 The punctkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "punctkit/corpus.h"
#include "punctkit/mfdfa.h"
#include "punctkit/tokenizer.h"
#include "punctkit/weibull.h"

namespace punctkit {
namespace {

void BM_Mfdfa(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> normal;
  std::vector<double> x(static_cast<std::size_t>(state.range(0)));
  for (double& v : x) v = normal(rng);
  MfdfaOptions options;
  options.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(RunMfdfa(x, options));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Mfdfa)->Arg(1 << 12)->Arg(1 << 16)->Unit(benchmark::kMillisecond);

void BM_SegmentCjk(benchmark::State& state) {
  const std::vector<std::pair<std::string, int64_t>> words = {
      {"春天", 50}, {"来了", 40}, {"花", 30}, {"开", 30}, {"小河", 20},
      {"流水", 20}, {"我们", 60}, {"一起", 40}, {"走", 30}, {"山", 25}};
  const Lexicon lexicon = Lexicon::FromEntries(words);
  static const char* kPieces[] = {"春", "天", "来", "了", "花", "开", "小", "河",
                                  "流", "水", "我", "们", "一", "起", "走", "山"};
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<int> pick(0, 15);
  std::uniform_int_distribution<int> stop(0, 11);
  std::string text;
  for (int64_t i = 0; i < state.range(0); ++i) {
    text += kPieces[pick(rng)];
    if (stop(rng) == 0) text += "。";
  }
  const Document doc = MakeDocument(text, "bench", "", {});
  const PunctPolicy policy = PunctPolicy::ChineseDefault();
  for (auto _ : state) benchmark::DoNotOptimize(SegmentCjk(doc, lexicon, policy));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SegmentCjk)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_FitDiscreteWeibull(benchmark::State& state) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  // Inverse-CMF draws from (p, beta) = (0.2, 1.5).
  std::vector<int64_t> sample(static_cast<std::size_t>(state.range(0)));
  for (int64_t& k : sample) {
    const double t = std::log1p(-u(rng)) / std::log1p(-0.2);
    k = static_cast<int64_t>(std::ceil(std::pow(t, 1.0 / 1.5)));
    if (k < 1) k = 1;
  }
  for (auto _ : state) benchmark::DoNotOptimize(FitDiscreteWeibull(sample));
}
BENCHMARK(BM_FitDiscreteWeibull)->Arg(100000)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace punctkit

BENCHMARK_MAIN();
