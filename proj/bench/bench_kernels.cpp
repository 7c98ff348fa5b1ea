// Serial reference vs OpenMP kernels on a synthetic corpus.

#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "kpgen/evaluator.hpp"
#include "kpgen/pipeline.hpp"

namespace {

const std::vector<kpgen::Document>& corpus() {
  static const auto docs = [] {
    std::mt19937_64 rng(11);
    const std::vector<std::string> words{"sensor", "network", "deployment", "graph",
                                         "neural",  "retrieval", "query",  "exposure",
                                         "path",    "model",   "learning", "data"};
    std::vector<kpgen::Document> out;
    for (int d = 0; d < 400; ++d) {
      kpgen::Document doc{"doc-" + std::to_string(d), "A title", "", {}};
      for (int s = 0; s < 30; ++s) {
        std::string sentence = "This";
        for (int w = 0; w < 18; ++w) sentence += " " + words[rng() % words.size()];
        doc.abstract += sentence + ". ";
      }
      for (int g = 0; g < 6; ++g)
        doc.gold.push_back(words[rng() % words.size()] + " " + words[rng() % words.size()]);
      out.push_back(std::move(doc));
    }
    return out;
  }();
  return docs;
}

kpgen::PredictConfig predict_config(int parallelism) {
  kpgen::PredictConfig config;
  config.budget = 64;
  config.parallelism = parallelism;
  return config;
}

void BM_PredictSerial(benchmark::State& state) {
  const kpgen::MockBackend backend;
  const auto config = predict_config(1);
  for (auto _ : state)
    benchmark::DoNotOptimize(kpgen::predict_corpus_serial(corpus(), backend, config));
}

void BM_PredictParallel(benchmark::State& state) {
  const kpgen::MockBackend backend;
  const auto config = predict_config(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kpgen::predict_corpus(corpus(), backend, config));
}

std::vector<kpgen::Prediction> predictions() {
  static const auto preds = [] {
    const kpgen::MockBackend backend;
    std::vector<kpgen::Prediction> out;
    for (auto& r : kpgen::predict_corpus_serial(corpus(), backend, predict_config(1)).results)
      out.push_back(r.prediction);
    return out;
  }();
  return preds;
}

void BM_EvaluateSerial(benchmark::State& state) {
  const auto preds = predictions();
  const kpgen::EvalConfig config{.stem = kpgen::Stemming::porter};
  for (auto _ : state)
    benchmark::DoNotOptimize(kpgen::evaluate_dataset_serial(preds, corpus(), config));
}

void BM_EvaluateParallel(benchmark::State& state) {
  const auto preds = predictions();
  kpgen::EvalConfig config{.stem = kpgen::Stemming::porter};
  config.parallelism = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(kpgen::evaluate_dataset(preds, corpus(), config));
}

}  // namespace

BENCHMARK(BM_PredictSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PredictParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EvaluateSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EvaluateParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
