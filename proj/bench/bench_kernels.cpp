// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Conductor Contributors

// Serial reference versus OpenMP kernel for each parallel hot path.

#include <benchmark/benchmark.h>

#include <random>

#include "conductor/backend/script.hpp"
#include "conductor/data/dataset.hpp"
#include "conductor/metrics/report.hpp"
#include "conductor/pipelines/pipelines.hpp"
#include "conductor/retrieval/bm25.hpp"
#include "oracles.hpp"
#include "paths.hpp"

namespace {

using namespace conductor;

const retrieval::Bm25Index& bench_index() {
  static const retrieval::Bm25Index index = [] {
    std::mt19937 rng(1);
    std::vector<std::string> texts;
    for (int i = 0; i < 2000; ++i) texts.push_back(oracle::join(oracle::random_seq(rng, 5, 60, 3000)));
    return retrieval::Bm25Index::build(retrieval::Corpus::from_texts("D", texts));
  }();
  return index;
}

std::vector<std::string> bench_queries(std::size_t n) {
  std::mt19937 rng(2);
  std::vector<std::string> q;
  for (std::size_t i = 0; i < n; ++i) q.push_back(oracle::join(oracle::random_seq(rng, 3, 12, 3000)));
  return q;
}

void BM_RetrieveBatchSerial(benchmark::State& state) {
  const auto& index = bench_index();
  const auto queries = bench_queries(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(retrieval::retrieve_batch_serial(index, queries, 4));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_RetrieveBatchParallel(benchmark::State& state) {
  const auto& index = bench_index();
  const auto queries = bench_queries(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(retrieval::retrieve_batch(index, queries, 4));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

struct ScoringInput {
  std::vector<RunRecord> records;
  std::vector<metrics::Reference> references;
  std::vector<const metrics::Reference*> aligned;
};

const ScoringInput& scoring_input() {
  static const ScoringInput input = [] {
    ScoringInput in;
    std::mt19937 rng(3);
    for (int i = 0; i < 4000; ++i) {
      RunRecord r;
      r.sample_id = "s" + std::to_string(i);
      r.response = oracle::join(oracle::random_seq(rng, 5, 80, 500));
      in.records.push_back(std::move(r));
      in.references.push_back({"s" + std::to_string(i), oracle::join(oracle::random_seq(rng, 5, 80, 500)), {}, {}});
    }
    in.aligned = metrics::align(in.records, in.references);
    return in;
  }();
  return input;
}

void BM_ScoreSamplesSerial(benchmark::State& state) {
  const auto& in = scoring_input();
  for (auto _ : state) {
    benchmark::DoNotOptimize(metrics::score_samples_serial(DatasetKind::Focus, in.records, in.aligned));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(in.records.size()));
}

void BM_ScoreSamplesParallel(benchmark::State& state) {
  const auto& in = scoring_input();
  for (auto _ : state) benchmark::DoNotOptimize(metrics::score_samples(DatasetKind::Focus, in.records, in.aligned));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(in.records.size()));
}

struct BatchInput {
  std::vector<data::Sample> samples;
  backend::Script script;
};

const BatchInput& batch_input() {
  static const BatchInput input = [] {
    BatchInput in{{}, backend::Script::load(testing_support::fixture("scripts/focus.json"))};
    const auto base = data::load_dataset(testing_support::fixture("focus.jsonl"), DatasetKind::Focus);
    for (int r = 0; r < 128; ++r) in.samples.insert(in.samples.end(), base.begin(), base.end());
    return in;
  }();
  return input;
}

void run_batch_bench(benchmark::State& state, int parallelism) {
  const auto& in = batch_input();
  backend::ScriptedBackend be([&](const backend::CompletionRequest& req) { return in.script.respond(req.prompt_text()); });
  pipelines::MethodConfig config;
  const auto factory = retrieval::bm25_factory();
  for (auto _ : state) {
    if (parallelism == 0) {
      benchmark::DoNotOptimize(pipelines::run_batch_serial(in.samples, config, be, factory));
    } else {
      benchmark::DoNotOptimize(pipelines::run_batch(in.samples, config, be, factory, parallelism));
    }
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(in.samples.size()));
}

void BM_RunBatchSerial(benchmark::State& state) { run_batch_bench(state, 0); }
void BM_RunBatchParallel(benchmark::State& state) { run_batch_bench(state, static_cast<int>(state.range(0))); }

}  // namespace

BENCHMARK(BM_RetrieveBatchSerial)->Arg(2000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_RetrieveBatchParallel)->Arg(2000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ScoreSamplesSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ScoreSamplesParallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_RunBatchSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_RunBatchParallel)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
