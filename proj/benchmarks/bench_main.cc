// Copyright 2026 The phontypo Authors.
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

#include <random>
#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include "phontypo/file_util.h"
#include "phontypo/inventory_induction.h"
#include "phontypo/snapshot.h"
#include "phontypo/stream_decoder.h"
#include "phontypo/typology_store.h"

namespace phontypo {
namespace {

const std::string& SampleText() {
  static const std::string text =
      ReadFile(std::string(PHONTYPO_BENCH_DATA_DIR) + "/phoible_sample.csv");
  return text;
}

const TypologyDatabase& SampleDb() {
  static const TypologyDatabase db = ParsePhoible(SampleText());
  return db;
}

void BM_ParsePhoible(benchmark::State& state) {
  // Replicate the sample with fresh inventory ids to reach the requested size.
  const std::string& text = SampleText();
  const std::size_t header_end = text.find('\n') + 1;
  std::string big = text.substr(0, header_end);
  for (int copy = 0; copy < state.range(0); ++copy) {
    std::size_t pos = header_end;
    while (pos < text.size()) {
      const std::size_t end = text.find('\n', pos);
      const std::string line = text.substr(pos, end - pos);
      big += "c" + std::to_string(copy) + "_" + line + "\n";
      pos = end == std::string::npos ? text.size() : end + 1;
    }
  }
  for (auto _ : state) benchmark::DoNotOptimize(ParsePhoible(big));
  state.SetBytesProcessed(static_cast<int64_t>(state.iterations() * big.size()));
}
BENCHMARK(BM_ParsePhoible)->Arg(1)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_SnapshotLoad(benchmark::State& state) {
  const std::string bytes = EncodeSnapshot(SampleDb());
  for (auto _ : state) benchmark::DoNotOptimize(DecodeSnapshot(bytes));
}
BENCHMARK(BM_SnapshotLoad);

void BM_DecodeBestPath(benchmark::State& state) {
  const std::size_t frames = static_cast<std::size_t>(state.range(0));
  const std::size_t n = static_cast<std::size_t>(state.range(1));
  std::mt19937_64 rng(1);
  std::normal_distribution<double> score(-1.0, 0.5);
  std::vector<Segment> segs;
  for (std::size_t i = 0; i < n; ++i) {
    segs.push_back(Segment{"s" + std::to_string(i), SegmentClass::kUnknown,
                           FeatureVectorFromSymbols("+")});
  }
  std::vector<std::vector<double>> scores(frames, std::vector<double>(n));
  for (auto& row : scores) {
    for (auto& s : row) s = score(rng);
  }
  DecodeParams params;
  params.switch_penalty = 0.5;
  params.min_duration = 2;
  const SegmentLattice lattice = LatticeFromScores(segs, scores, params.top_k);
  for (auto _ : state) benchmark::DoNotOptimize(DecodeBestPath(lattice, params));
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations() * frames));
}
BENCHMARK(BM_DecodeBestPath)->Args({200, 32})->Args({1000, 64})->Args({5000, 64});

void BM_ConstrainedDecode(benchmark::State& state) {
  const auto& db = SampleDb();
  StreamGenParams gen;
  gen.n_frames = static_cast<std::size_t>(state.range(0));
  const auto stream = GenerateStream(db, db.GetInventory("1675"), gen).first;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        ConstrainedDecode(stream, db, db.GetInventory("1675"), DecodeParams{}));
  }
}
BENCHMARK(BM_ConstrainedDecode)->Arg(200)->Arg(2000);

void BM_InduceInventory(benchmark::State& state) {
  const auto& db = SampleDb();
  StreamGenParams gen;
  gen.seed = 7;
  std::vector<FeatureStream> streams;
  for (auto& [s, truth] :
       GenerateStreams(db, db.GetInventory("305"), gen, static_cast<std::size_t>(state.range(0)))) {
    streams.push_back(std::move(s));
  }
  LanguagePrior prior;
  for (const char* l : {"Balinese", "Javanese", "Madurese", "Malay", "Sundanese"}) {
    prior.weights[l] = 0.2;
  }
  const CandidatePool pool =
      BuildCandidatePool(db, NearestLanguages(db, prior, SimilarityMetric::kJaccard, 5));
  InductionParams params;
  params.lambda = 0.72;
  for (auto _ : state) benchmark::DoNotOptimize(InduceInventory(streams, db, pool, params));
}
BENCHMARK(BM_InduceInventory)->Arg(5)->Arg(20)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace phontypo

BENCHMARK_MAIN();
