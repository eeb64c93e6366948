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

#include "phontypo/reports.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "phontypo/error.h"

namespace phontypo {

Json DatabaseSummaryJson(const TypologyDatabase& db) {
  Json j;
  j["inventories"] = db.inventories().size();
  j["languages"] = db.by_language().size();
  j["segments"] = db.segments().size();
  j["features"] = db.feature_system().names();
  const ParseStats& s = db.stats();
  j["stats"] = {{"rows", s.rows},
                {"duplicate_rows", s.duplicate_rows},
                {"contour_tokens", s.contour_tokens},
                {"conflicts", s.conflicts}};
  return j;
}

Json InventoryJson(const Inventory& inventory) {
  Json j;
  j["inventory_id"] = inventory.inventory_id;
  j["language_name"] = inventory.language_name;
  j["language_code"] = inventory.language_code;
  j["source"] = inventory.source;
  j["family"] = inventory.family;
  j["size"] = inventory.size();
  j["glyphs"] = inventory.glyphs;
  return j;
}

Json ConsistencyReportJson(const ConsistencyReport& report) {
  Json j;
  j["mode"] = std::string(ContrastModeName(report.mode));
  j["grounded"] = report.grounded;
  j["train_languages"] = report.train_languages;
  j["test_languages"] = report.test_languages;
  Json rows = Json::array();
  for (const auto& r : report.per_language) {
    rows.push_back({{"language", r.language},
                    {"n_pos", r.n_pos},
                    {"n_neg", r.n_neg},
                    {"accuracy", r.accuracy}});
  }
  j["per_language"] = std::move(rows);
  j["macro_accuracy"] = report.macro_accuracy;
  j["train_accuracy"] = report.train_accuracy;
  j["epochs_run"] = report.epochs_run;
  j["final_loss"] = report.final_loss;
  return j;
}

Json AlignmentJson(const Alignment& alignment) {
  Json j;
  j["total_log_score"] = alignment.total_log_score;
  Json runs = Json::array();
  for (const auto& r : alignment.runs) {
    runs.push_back({{"glyph", r.glyph}, {"start_frame", r.start_frame},
                    {"end_frame", r.end_frame}});
  }
  j["runs"] = std::move(runs);
  return j;
}

Json InventoryScoreJson(const InventoryScore& score) {
  Json j;
  j["fit"] = score.fit;
  j["penalty"] = score.penalty;
  j["penalized"] = score.penalized;
  j["per_stream"] = score.per_stream;
  return j;
}

Json RankingJson(const std::vector<RankedLanguage>& ranked) {
  Json rows = Json::array();
  for (const auto& r : ranked) rows.push_back({{"language", r.language}, {"score", r.score}});
  return rows;
}

Json CandidatePoolJson(const CandidatePool& pool) {
  Json rows = Json::array();
  for (const auto& [g, w] : pool.entries) rows.push_back({{"glyph", g}, {"weight", w}});
  return rows;
}

Json InductionResultJson(const InductionResult& result) {
  Json j;
  j["inventory"] = result.inventory.glyphs;
  Json trace = Json::array();
  for (const auto& step : result.trace) {
    Json gain = step.gain;
    if (!std::isfinite(step.gain)) gain = nullptr;
    trace.push_back({{"glyph", step.glyph}, {"gain", gain}});
  }
  j["trace"] = std::move(trace);
  j["score"] = InventoryScoreJson(result.score);
  return j;
}

Json AdmissibilityJson(const AdmissibilityReport& report) {
  Json j;
  j["kept"] = report.kept;
  Json removed = Json::array();
  for (const auto& [g, n] : report.removed) {
    removed.push_back({{"glyph", g}, {"attestation", n}});
  }
  j["removed"] = std::move(removed);
  if (report.containment) {
    j["containment"] = *report.containment;
    j["best_inventory_id"] = report.best_inventory_id;
  }
  j["admissible"] = report.admissible;
  return j;
}

Json DecodeParamsJson(const DecodeParams& params) {
  return Json{{"switch_penalty", params.switch_penalty},
              {"top_k", params.top_k},
              {"min_duration", params.min_duration},
              {"clamp_epsilon", params.clamp_epsilon}};
}

Json InductionParamsJson(const InductionParams& params) {
  return Json{{"lambda", params.lambda},
              {"max_size", params.max_size},
              {"epsilon_gain", params.epsilon_gain},
              {"decode", DecodeParamsJson(params.decode)}};
}

Json RealizationParamsJson(const RealizationParams& params) {
  Json shifts = Json::object();
  for (const auto& [family, shift] : params.family_shift) {
    shifts[family] = {{"flip_features", shift.flip_features},
                      {"offset_scale", shift.offset_scale}};
  }
  return Json{{"dim", params.dim},
              {"noise_sigma", params.noise_sigma},
              {"seed", params.seed},
              {"family_shift", std::move(shifts)}};
}

Json TrainingHyperJson(const TrainingHyper& hyper) {
  return Json{{"learning_rate", hyper.learning_rate},
              {"epochs", hyper.epochs},
              {"l2", hyper.l2}};
}

std::string DumpJson(const Json& json) { return json.dump(2) + "\n"; }

namespace {

Json ParseText(std::string_view text, std::string_view what) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

void RequireObject(const Json& j, std::string_view where,
                   std::initializer_list<std::string_view> allowed) {
  if (!j.is_object()) throw ParseError(std::string(where) + " must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ParseError(std::string(where) + ": unknown key '" + key + "'");
    }
  }
}

template <typename T>
void Read(const Json& j, std::string_view key, T& out) {
  const auto it = j.find(std::string(key));
  if (it == j.end()) return;
  try {
    out = it->template get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ParseError("key '" + std::string(key) + "' has the wrong type");
  }
}

std::vector<std::string> StringList(const Json& j, std::string_view key) {
  std::vector<std::string> out;
  Read(j, key, out);
  return out;
}

}  // namespace

RealizationParams ParseRealizationParams(const Json& json) {
  RequireObject(json, "realization", {"dim", "noise_sigma", "seed", "family_shift"});
  RealizationParams params;
  Read(json, "dim", params.dim);
  Read(json, "noise_sigma", params.noise_sigma);
  Read(json, "seed", params.seed);
  if (const auto it = json.find("family_shift"); it != json.end()) {
    if (!it->is_object()) throw ParseError("family_shift must be a JSON object");
    for (const auto& [family, value] : it->items()) {
      RequireObject(value, "family_shift." + family, {"flip_features", "offset_scale"});
      FamilyShift shift;
      shift.flip_features = StringList(value, "flip_features");
      Read(value, "offset_scale", shift.offset_scale);
      params.family_shift.emplace(family, std::move(shift));
    }
  }
  ValidateRealization(params);
  return params;
}

ContrastConfig ParseContrastConfig(std::string_view text) {
  const Json j = ParseText(text, "contrast config");
  RequireObject(j, "contrast config",
                {"target_feature", "scope", "grounded", "context_features",
                 "language_family", "mode", "repeats", "languages", "train_languages",
                 "test_languages", "realization", "training"});
  ContrastConfig config;
  Read(j, "target_feature", config.contrast.target_feature);
  if (config.contrast.target_feature.empty()) {
    throw ParseError("contrast config: target_feature is required");
  }
  if (const auto it = j.find("scope"); it != j.end()) {
    if (!it->is_object()) throw ParseError("scope must be a JSON object");
    for (const auto& [feature, value] : it->items()) {
      if (!value.is_string()) throw ParseError("scope values must be strings");
      config.contrast.scope.push_back(
          FeatureConstraint{feature, ParseTernarySymbol(value.get<std::string>())});
    }
  }
  Read(j, "grounded", config.contrast.grounded);
  config.contrast.context_features = StringList(j, "context_features");
  if (const auto it = j.find("language_family"); it != j.end()) {
    std::map<std::string, std::string> families;
    Read(j, "language_family", families);
    config.contrast.language_family.insert(families.begin(), families.end());
  }
  std::string mode = "symbolic";
  Read(j, "mode", mode);
  try {
    config.mode = ParseContrastMode(mode);
  } catch (const UsageError& e) {
    throw ParseError(e.what());
  }
  Read(j, "repeats", config.repeats);
  if (config.repeats < 1) throw ParseError("repeats must be >= 1");
  config.languages = StringList(j, "languages");
  config.train_languages = StringList(j, "train_languages");
  config.test_languages = StringList(j, "test_languages");
  if (const auto it = j.find("realization"); it != j.end()) {
    try {
      config.realization = ParseRealizationParams(*it);
    } catch (const UsageError& e) {
      throw ParseError(e.what());
    }
  }
  if (const auto it = j.find("training"); it != j.end()) {
    RequireObject(*it, "training", {"learning_rate", "epochs", "l2"});
    Read(*it, "learning_rate", config.training.learning_rate);
    Read(*it, "epochs", config.training.epochs);
    Read(*it, "l2", config.training.l2);
  }
  return config;
}

LanguagePrior ParseLanguagePrior(std::string_view text) {
  const Json j = ParseText(text, "language prior");
  if (!j.is_object()) throw ParseError("language prior must be a JSON object");
  LanguagePrior prior;
  for (const auto& [lang, w] : j.items()) {
    if (!w.is_number()) throw ParseError("prior weight for '" + lang + "' is not a number");
    prior.weights.emplace(lang, w.get<double>());
  }
  ValidatePrior(prior);
  return prior;
}

InductionParams ParseInductionParams(std::string_view text) {
  const Json j = ParseText(text, "induction config");
  RequireObject(j, "induction config",
                {"lambda", "max_size", "epsilon_gain", "decode", "calibration"});
  InductionParams params;
  Read(j, "lambda", params.lambda);
  Read(j, "max_size", params.max_size);
  Read(j, "epsilon_gain", params.epsilon_gain);
  if (const auto it = j.find("decode"); it != j.end()) {
    RequireObject(*it, "decode", {"switch_penalty", "top_k", "min_duration", "clamp_epsilon"});
    Read(*it, "switch_penalty", params.decode.switch_penalty);
    Read(*it, "top_k", params.decode.top_k);
    Read(*it, "min_duration", params.decode.min_duration);
    Read(*it, "clamp_epsilon", params.decode.clamp_epsilon);
  }
  ValidateInductionParams(params);
  return params;
}

}  // namespace phontypo
