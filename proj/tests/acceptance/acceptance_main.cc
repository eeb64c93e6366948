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

// Acceptance checks AC-1 .. AC-6. Prints one line per criterion and exits
// non-zero if any criterion fails. AC-1 reports SKIP for the full-database
// part when PHOIBLE_CSV does not name a PHOIBLE 2.0 long-format file.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cli/execute.h"
#include "fixtures.h"
#include "oracles.h"
#include "phontypo/contrast_lab.h"
#include "phontypo/error.h"
#include "phontypo/file_util.h"
#include "phontypo/inventory_induction.h"
#include "phontypo/logistic.h"
#include "phontypo/realization.h"
#include "phontypo/reports.h"
#include "phontypo/snapshot.h"
#include "phontypo/stream_decoder.h"

namespace phontypo {
namespace {

namespace fs = std::filesystem;

enum class Status { kPass, kFail, kSkip };

struct Outcome {
  Status status = Status::kPass;
  std::string detail;
};

class Checks {
 public:
  void Expect(bool ok, const std::string& what) {
    if (!ok) failures_.push_back(what);
  }
  bool ok() const { return failures_.empty(); }
  std::string Failures() const {
    std::string out;
    for (const auto& f : failures_) out += (out.empty() ? "" : "; ") + f;
    return out;
  }

 private:
  std::vector<std::string> failures_;
};

std::string Fmt(double v, int precision = 4) {
  std::ostringstream s;
  s.precision(precision);
  s << v;
  return s.str();
}

double Seconds(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// Runs a shell command and returns its stdout.
std::string Capture(const std::string& command) {
  std::string out;
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) throw IoError("cannot run: " + command);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  if (pclose(pipe) != 0) throw IoError("command failed: " + command);
  return out;
}

bool IsRetroflexPlosive(const std::string& glyph) {
  // U+0288 LATIN SMALL LETTER T WITH RETROFLEX HOOK, U+0256 D WITH TAIL.
  return glyph.rfind("\xCA\x88", 0) == 0 || glyph.rfind("\xC9\x96", 0) == 0;
}

// Counts against the independent recount plus the Javanese checks.
void CheckDatabase(const std::string& path, const TypologyDatabase& db, const std::string& tag,
                   Checks& checks) {
  const Json recount = Json::parse(
      Capture("python3 '" + std::string(PHONTYPO_RECOUNT_SCRIPT) + "' '" + path + "'"));
  checks.Expect(recount.at("inventories") == db.inventories().size(),
                tag + " inventory count differs from recount");
  checks.Expect(recount.at("languages") == db.by_language().size(),
                tag + " language count differs from recount");
  checks.Expect(recount.at("segments") == db.segments().size(),
                tag + " segment count differs from recount");
  checks.Expect(recount.at("rows") == db.stats().rows, tag + " row count differs from recount");

  const auto javanese = InventoriesForLanguage(db, "Javanese");
  checks.Expect(javanese.size() == 3, tag + " Javanese has " + std::to_string(javanese.size()) +
                                          " inventories");
  if (javanese.empty()) return;
  auto by_size = javanese;
  std::stable_sort(by_size.begin(), by_size.end(),
                   [](const Inventory* a, const Inventory* b) { return a->size() < b->size(); });
  auto has_retroflex = [](const Inventory* inv) {
    return std::any_of(inv->glyphs.begin(), inv->glyphs.end(), IsRetroflexPlosive);
  };
  checks.Expect(has_retroflex(by_size.back()) != has_retroflex(by_size.front()),
                tag + " retroflex plosives not in exactly one of largest/smallest");
}

Outcome Ac1() {
  const auto start = std::chrono::steady_clock::now();
  Checks checks;
  const std::string sample = testing::DataPath("phoible_sample.csv");
  CheckDatabase(sample, LoadDatabase(sample), "sample", checks);
  const char* full = std::getenv("PHOIBLE_CSV");
  if (full && *full) {
    const auto parse_start = std::chrono::steady_clock::now();
    const TypologyDatabase db = LoadDatabase(full);
    const double parse_seconds = Seconds(parse_start);
    CheckDatabase(full, db, "PHOIBLE", checks);
    checks.Expect(parse_seconds < 30.0, "PHOIBLE parse took " + Fmt(parse_seconds) + " s");
    return {checks.ok() ? Status::kPass : Status::kFail,
            checks.ok() ? "PHOIBLE " + std::to_string(db.inventories().size()) +
                              " inventories, " + std::to_string(db.by_language().size()) +
                              " languages, " + std::to_string(db.segments().size()) +
                              " segments match recount; parse " + Fmt(parse_seconds) + " s"
                        : checks.Failures()};
  }
  if (!checks.ok()) return {Status::kFail, checks.Failures()};
  return {Status::kSkip, "PHOIBLE_CSV not set; sample fixture checks passed in " +
                             Fmt(Seconds(start)) + " s"};
}

Outcome Ac2() {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(20260101);
  std::uniform_int_distribution<int> frames(1, 6), cands(1, 8), level(0, 3), dur(1, 2);
  std::uniform_real_distribution<double> penalty(0.0, 1.0);
  int mismatches = 0, infeasible_agree = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = cands(rng);
    const std::size_t t_len = frames(rng);
    std::vector<Segment> segs;
    for (std::size_t i = 0; i < n; ++i) {
      segs.push_back(Segment{std::string(1, static_cast<char>('a' + i)), SegmentClass::kUnknown,
                             FeatureVectorFromSymbols("+")});
    }
    std::vector<std::vector<double>> scores(t_len, std::vector<double>(n));
    for (auto& row : scores) {
      for (auto& s : row) s = -0.25 * level(rng);
    }
    const int top_k = std::uniform_int_distribution<int>(1, static_cast<int>(n))(rng);
    const SegmentLattice lattice = LatticeFromScores(segs, scores, top_k);
    DecodeParams params;
    params.switch_penalty = trial % 4 == 0 ? 0.0 : 0.25 * std::floor(penalty(rng) * 4);
    params.min_duration = dur(rng);
    const auto oracle = testing::BruteForceDecode(lattice, params);
    if (!oracle) {
      try {
        DecodeBestPath(lattice, params);
        ++mismatches;
      } catch (const InfeasibleError&) {
        ++infeasible_agree;
      }
      continue;
    }
    const Alignment a = DecodeBestPath(lattice, params);
    std::vector<std::string> expected;
    for (std::size_t i : oracle->labels) expected.push_back(lattice.candidates[i].glyph);
    if (std::abs(a.total_log_score - oracle->score) > 1e-9 || a.Labels() != expected) {
      ++mismatches;
    }
  }
  const double seconds = Seconds(start);
  const bool ok = mismatches == 0 && seconds < 10.0;
  return {ok ? Status::kPass : Status::kFail,
          std::to_string(500 - mismatches) + "/500 match the exhaustive oracle (" +
              std::to_string(infeasible_agree) + " infeasible on both), " + Fmt(seconds) + " s"};
}

double MeanMacro(const std::vector<ConsistencyReport>& folds) {
  double sum = 0.0;
  for (const auto& f : folds) sum += f.macro_accuracy;
  return sum / static_cast<double>(folds.size());
}

Outcome Ac3() {
  const auto start = std::chrono::steady_clock::now();
  const auto& db = testing::SampleDb();
  const ContrastConfig same =
      ParseContrastConfig(ReadFile(testing::DataPath("config/contrast_anterior.json")));
  const ContrastConfig flip =
      ParseContrastConfig(ReadFile(testing::DataPath("config/contrast_anterior_flip.json")));
  auto heldout = [&](const ContrastConfig& c) {
    return EvaluateHeldout(db, c.contrast, c.train_languages, c.test_languages, c.mode,
                           c.realization, c.training, c.repeats)
        .macro_accuracy;
  };
  const double same_acc = heldout(same);
  const double flip_acc = heldout(flip);
  const double in_family =
      MeanMacro(LeaveOneLanguageOut(db, flip.contrast, flip.train_languages, flip.mode,
                                    flip.realization, flip.training, flip.repeats));
  const double seconds = Seconds(start);
  const bool ok = same_acc >= 0.95 && in_family - flip_acc >= 0.25 && seconds < 60.0;
  return {ok ? Status::kPass : Status::kFail,
          "consistent held-out " + Fmt(same_acc) + " (>= 0.95); flipped held-out " +
              Fmt(flip_acc) + " vs in-family " + Fmt(in_family) + ", gap " +
              Fmt(in_family - flip_acc) + " (>= 0.25); " + Fmt(seconds) + " s"};
}

std::vector<FeatureStream> Streams(const TypologyDatabase& db, const std::string& id,
                                   std::uint64_t seed) {
  StreamGenParams gen;
  gen.n_frames = 200;
  gen.noise_sigma = 0.1;
  gen.seed = seed;
  std::vector<FeatureStream> out;
  for (auto& [stream, truth] : GenerateStreams(db, db.GetInventory(id), gen, 20)) {
    out.push_back(std::move(stream));
  }
  return out;
}

InductionParams ShippedParams() {
  return ParseInductionParams(ReadFile(testing::DataPath("config/induction.json")));
}

Outcome Ac4() {
  const auto start = std::chrono::steady_clock::now();
  const auto& db = testing::SampleDb();
  const InductionParams params = ShippedParams();
  const Inventory& planted = db.GetInventory("305");
  // Evaluation streams use a seed distinct from the one used to calibrate lambda.
  const auto streams = Streams(db, "305", 8);
  LanguagePrior prior;
  for (const char* l : {"Balinese", "Javanese", "Madurese", "Malay", "Sundanese"}) {
    prior.weights[l] = 0.2;
  }
  const CandidatePool pool =
      BuildCandidatePool(db, NearestLanguages(db, prior, SimilarityMetric::kJaccard, 5));
  const InductionResult result = InduceInventory(streams, db, pool, params);
  std::set<std::string> a(planted.glyphs.begin(), planted.glyphs.end());
  std::set<std::string> b(result.inventory.glyphs.begin(), result.inventory.glyphs.end());
  std::size_t common = 0;
  for (const auto& g : b) common += a.count(g);
  const double jaccard =
      static_cast<double>(common) / static_cast<double>(a.size() + b.size() - common);

  int exhaustive_equal = 0;
  for (std::uint64_t seed : {1, 2, 3}) {
    const auto f = testing::MakeSmallFixture(seed);
    InductionParams small = params;
    small.lambda = 0.3;
    const auto oracle = testing::ExhaustiveSubsetOptimum(f.streams, db, f.pool, small);
    const auto greedy = InduceInventory(f.streams, db, f.pool, small);
    if (std::abs(greedy.score.penalized - oracle.penalized) <=
        1e-9 * std::max(1.0, std::abs(oracle.penalized))) {
      ++exhaustive_equal;
    }
  }
  const double seconds = Seconds(start);
  const bool ok = planted.size() == 12 && pool.size() == 40 && jaccard >= 0.9 &&
                  exhaustive_equal == 3 && seconds < 60.0;
  return {ok ? Status::kPass : Status::kFail,
          "planted " + std::to_string(planted.size()) + ", pool " + std::to_string(pool.size()) +
              ", induced " + std::to_string(b.size()) + ", Jaccard " + Fmt(jaccard) +
              " (>= 0.9); greedy = exhaustive on " + std::to_string(exhaustive_equal) +
              "/3 small fixtures; " + Fmt(seconds) + " s"};
}

Outcome Ac5() {
  const auto start = std::chrono::steady_clock::now();
  const auto& db = testing::SampleDb();
  const InductionParams params = ShippedParams();
  const Inventory& with = db.GetInventory("1675");
  const Inventory& without = db.GetInventory("380");
  auto margin = [&](const std::string& source) {
    const auto streams = Streams(db, source, 11);
    return ScoreInventory(streams, db, with, params).penalized -
           ScoreInventory(streams, db, without, params).penalized;
  };
  const double from_with = margin("1675");
  const double from_without = margin("380");
  const double seconds = Seconds(start);
  const bool ok = from_with > 0 && from_without < 0 && seconds < 30.0;
  return {ok ? Status::kPass : Status::kFail,
          "lambda " + Fmt(params.lambda) + "; streams from 1675: 1675 - 380 = " +
              Fmt(from_with) + "; streams from 380: 1675 - 380 = " + Fmt(from_without) + "; " +
              Fmt(seconds) + " s"};
}

bool ManifestReplayMatches(const fs::path& dir) {
  const std::string db = testing::DataPath("phoible_sample.csv");
  std::ostringstream out, err;
  auto run = [&](std::vector<std::string> args) {
    return cli::Run(args, out, err);
  };
  if (run({"gen-stream", "--db", db, "--inventory-id", "305", "--count", "3", "--frames", "80",
           "--seed", "3", "--out", (dir / "streams").string()}) != 0) {
    return false;
  }
  const std::string first = (dir / "first.json").string();
  if (run({"induce", "--db", db, "--streams", (dir / "streams").string(), "--family",
           "Malayo-Polynesian", "--out", first}) != 0) {
    return false;
  }
  const auto manifest =
      cli::RunManifest::FromJson(Json::parse(ReadFile(first + ".manifest.json")));
  auto options = manifest.options;
  options["out"] = (dir / "second.json").string();
  if (cli::Execute(cli::CommandFromOptions(manifest.subcommand, options), out, err) != 0) {
    return false;
  }
  for (const auto& [path, sha] : manifest.inputs) {
    if (cli::Sha256File(path) != sha) return false;
  }
  return ReadFile(first) == ReadFile((dir / "second.json").string());
}

Outcome Ac6() {
  Checks checks;
  std::mt19937_64 rng(606);
  double worst = 0.0;
  for (int d = 0; d < 20; ++d) {
    const int n = std::uniform_int_distribution<int>(4, 30)(rng);
    const int dim = std::uniform_int_distribution<int>(1, 6)(rng);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<Instance> data;
    for (int i = 0; i < n; ++i) {
      Instance inst;
      for (int k = 0; k < dim; ++k) inst.input.push_back(gauss(rng));
      inst.label = std::bernoulli_distribution(0.5)(rng) ? 1 : 0;
      data.push_back(std::move(inst));
    }
    std::vector<double> w(dim);
    for (auto& x : w) x = 0.5 * gauss(rng);
    const double bias = 0.5 * gauss(rng);
    const double l2 = d % 2 == 0 ? 0.0 : 0.1;
    std::vector<double> analytic, numeric;
    double gb = 0.0, nb = 0.0;
    LogisticGradient(data, w, bias, l2, analytic, gb);
    testing::FiniteDifferenceGradient(data, w, bias, l2, 1e-5, numeric, nb);
    analytic.push_back(gb);
    numeric.push_back(nb);
    worst = std::max(worst, testing::RelativeError(analytic, numeric));
  }
  checks.Expect(worst <= 1e-5, "gradient relative error " + Fmt(worst));

  const auto& db = testing::SampleDb();
  StreamGenParams gen;
  gen.seed = 99;
  const auto g1 = GenerateStream(db, db.GetInventory("1675"), gen);
  const auto g2 = GenerateStream(db, db.GetInventory("1675"), gen);
  checks.Expect(g1.first == g2.first && g1.second.runs == g2.second.runs,
                "generator not reproducible");

  RealizationParams rp;
  rp.seed = 5;
  const Segment& t = *db.FindSegment("t");
  checks.Expect(SynthRealization(db.feature_system(), t, "Dravidian", rp, 3) ==
                    SynthRealization(db.feature_system(), t, "Dravidian", rp, 3),
                "realization not reproducible");

  std::vector<Segment> segs;
  for (const char* g : {"m", "b", "k", "a"}) segs.push_back(*db.FindSegment(g));
  const std::vector<std::vector<double>> ties(5, std::vector<double>(4, -0.5));
  const auto forward = DecodeBestPath(LatticeFromScores(segs, ties, 4), DecodeParams{});
  std::reverse(segs.begin(), segs.end());
  const auto backward = DecodeBestPath(LatticeFromScores(segs, ties, 4), DecodeParams{});
  checks.Expect(forward.Labels() == backward.Labels() && forward.runs.size() == 1 &&
                    forward.runs[0].glyph == "a",
                "tie-breaking depends on candidate order");

  ContrastSpec spec;
  spec.target_feature = "back";
  spec.scope = {{"syllabic", Ternary::kPlus}};
  spec.grounded = true;
  auto data = BuildContrastDataset(db, spec, {"Tamil", "Hindi", "Spanish"},
                                   ContrastMode::kSymbolic, std::nullopt, 1);
  const Classifier c1 = TrainClassifier(data, TrainingHyper{});
  std::shuffle(data.begin(), data.end(), rng);
  const Classifier c2 = TrainClassifier(data, TrainingHyper{});
  checks.Expect(c1.weights == c2.weights && c1.bias == c2.bias,
                "training depends on instance order");

  const fs::path dir = fs::temp_directory_path() / "phontypo_acceptance_manifest";
  fs::remove_all(dir);
  fs::create_directories(dir);
  checks.Expect(ManifestReplayMatches(dir), "manifest replay differs");
  fs::remove_all(dir);

  return {checks.ok() ? Status::kPass : Status::kFail,
          checks.ok() ? "max gradient relative error " + Fmt(worst, 3) +
                            " over 20 datasets; generator, realization, tie-breaking, training "
                            "order and manifest replay bitwise stable"
                      : checks.Failures()};
}

}  // namespace
}  // namespace phontypo

int main() {
  using phontypo::Outcome;
  using phontypo::Status;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"AC-1", phontypo::Ac1}, {"AC-2", phontypo::Ac2}, {"AC-3", phontypo::Ac3},
      {"AC-4", phontypo::Ac4}, {"AC-5", phontypo::Ac5}, {"AC-6", phontypo::Ac6}};
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome outcome;
    try {
      outcome = check();
    } catch (const std::exception& e) {
      outcome = {Status::kFail, std::string("exception: ") + e.what()};
    }
    const char* label = outcome.status == Status::kPass   ? "PASS"
                        : outcome.status == Status::kSkip ? "SKIP"
                                                          : "FAIL";
    if (outcome.status == Status::kFail) ++failed;
    std::cout << name << " " << label << " " << outcome.detail << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
