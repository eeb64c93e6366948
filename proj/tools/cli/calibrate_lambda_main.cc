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

// Calibrates the induction size penalty on generator data: streams from a
// planted inventory, extras from the closest-language pool.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "phontypo/error.h"
#include "phontypo/file_util.h"
#include "phontypo/inventory_induction.h"
#include "phontypo/reports.h"
#include "phontypo/snapshot.h"

int main(int argc, char** argv) {
  using namespace phontypo;
  CLI::App app{"Calibrate the induction size penalty", "calibrate_lambda"};
  std::string db_path;
  std::string planted_id = "305";
  std::vector<std::string> languages = {"Balinese", "Javanese", "Madurese", "Malay",
                                        "Sundanese"};
  StreamGenParams gen;
  std::size_t count = 20;
  std::string out;
  app.add_option("--db", db_path, "inventory CSV or snapshot")->required();
  app.add_option("--inventory-id", planted_id, "planted inventory");
  app.add_option("--languages", languages, "pool languages (uniform prior)")->delimiter(',');
  app.add_option("--count", count, "streams");
  app.add_option("--frames", gen.n_frames, "frames per stream");
  app.add_option("--noise", gen.noise_sigma, "posterior noise sigma");
  app.add_option("--seed", gen.seed, "generator seed");
  app.add_option("--out", out, "write an induction config with the calibrated lambda");
  CLI11_PARSE(app, argc, argv);

  try {
    const TypologyDatabase db = LoadDatabase(db_path);
    const Inventory& planted = db.GetInventory(planted_id);
    std::vector<FeatureStream> streams;
    for (auto& [stream, truth] : GenerateStreams(db, planted, gen, count)) {
      streams.push_back(std::move(stream));
    }
    LanguagePrior prior;
    for (const auto& l : languages) prior.weights[l] = 1.0 / static_cast<double>(languages.size());
    const CandidatePool pool =
        BuildCandidatePool(db, NearestLanguages(db, prior, SimilarityMetric::kJaccard,
                                                languages.size()));
    std::vector<std::string> extras;
    for (const auto& [g, w] : pool.entries) {
      if (!planted.Contains(g)) extras.push_back(g);
    }
    InductionParams params;
    const LambdaCalibration cal =
        CalibrateLambda(streams, db, planted.glyphs, extras, params.decode);
    params.lambda = cal.lambda;

    Json report;
    report["planted_inventory_id"] = planted.inventory_id;
    report["languages"] = languages;
    report["extras"] = extras.size();
    report["streams"] = count;
    report["frames"] = gen.n_frames;
    report["noise_sigma"] = gen.noise_sigma;
    report["seed"] = gen.seed;
    report["min_removal_loss"] = cal.min_removal_loss;
    report["max_addition_gain"] = cal.max_addition_gain;
    report["feasible"] = cal.feasible;
    report["lambda"] = cal.lambda;
    std::cout << DumpJson(report);
    if (!out.empty()) {
      if (!cal.feasible) throw InfeasibleError("no lambda separates the planted inventory");
      Json config = InductionParamsJson(params);
      config["calibration"] = report;
      WriteFileAtomic(out, DumpJson(config));
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
}
