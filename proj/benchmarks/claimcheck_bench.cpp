#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include "claimcheck/evaluation.hpp"
#include "claimcheck/model.hpp"
#include "claimcheck/preprocess.hpp"
#include "claimcheck/random.hpp"
#include "claimcheck/splits.hpp"
#include "claimcheck/synthetic.hpp"
#include "claimcheck/topicsim.hpp"

using namespace claimcheck;

namespace {

const Corpus& bench_corpus() {
  static const Corpus corpus = [] {
    SyntheticSpec spec;
    spec.seed = 1;
    spec.noise_rate = 0.5;
    return synthetic_corpus(spec);
  }();
  return corpus;
}

void BM_NormalizeTweet(benchmark::State& state) {
  const auto& records = bench_corpus().records();
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(normalize_tweet(records[i++ % records.size()].text));
  }
}
BENCHMARK(BM_NormalizeTweet);

void BM_MeanAveragePrecision(benchmark::State& state) {
  auto rng = make_rng(2, "bench/map");
  ScoreMap scores;
  LabelMap labels;
  for (std::int64_t i = 0; i < state.range(0); ++i) {
    const auto id = std::to_string(i);
    scores.emplace(id, uniform_unit(rng));
    labels.emplace(id, uniform_below(rng, 4) == 0 ? Label::CW : Label::NCW);
  }
  for (auto _ : state) benchmark::DoNotOptimize(mean_average_precision(scores, labels));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_MeanAveragePrecision)->Range(64, 16384)->Complexity();

void BM_BaselineFit(benchmark::State& state) {
  std::vector<TrainingExample> examples;
  for (const auto& r : bench_corpus().records()) {
    if (examples.size() == static_cast<std::size_t>(state.range(0))) break;
    examples.push_back({r.tweet_id, r.text, r.label});
  }
  for (auto _ : state) benchmark::DoNotOptimize(BaselineScorer::fit({}, 0, examples));
}
BENCHMARK(BM_BaselineFit)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_MakeHoldouts(benchmark::State& state) {
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(make_holdouts(bench_corpus(), seed++));
}
BENCHMARK(BM_MakeHoldouts)->Unit(benchmark::kMillisecond);

void BM_SimilarityMatrix(benchmark::State& state) {
  const HashingEmbedder embedder;
  for (auto _ : state) benchmark::DoNotOptimize(similarity_matrix(bench_corpus(), embedder));
}
BENCHMARK(BM_SimilarityMatrix)->Unit(benchmark::kMillisecond);

}  // namespace
