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

#ifndef PHONTYPO_REPORTS_H_
#define PHONTYPO_REPORTS_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "phontypo/contrast_lab.h"
#include "phontypo/inventory_induction.h"
#include "phontypo/logistic.h"
#include "phontypo/realization.h"
#include "phontypo/stream_decoder.h"
#include "phontypo/typology_store.h"

namespace phontypo {

// Reports keep their field order stable; this is the only JSON type they use.
using Json = nlohmann::ordered_json;

Json DatabaseSummaryJson(const TypologyDatabase& db);
Json InventoryJson(const Inventory& inventory);
Json ConsistencyReportJson(const ConsistencyReport& report);
Json AlignmentJson(const Alignment& alignment);
Json InventoryScoreJson(const InventoryScore& score);
Json RankingJson(const std::vector<RankedLanguage>& ranked);
Json CandidatePoolJson(const CandidatePool& pool);
Json InductionResultJson(const InductionResult& result);
Json AdmissibilityJson(const AdmissibilityReport& report);
Json DecodeParamsJson(const DecodeParams& params);
Json InductionParamsJson(const InductionParams& params);
Json RealizationParamsJson(const RealizationParams& params);
Json TrainingHyperJson(const TrainingHyper& hyper);

// Serialized with two-space indent and a trailing newline.
std::string DumpJson(const Json& json);

// Declarative contrast experiment, read from JSON:
//   target_feature, scope {feature: "+"|"-"|"0"}, grounded, context_features,
//   language_family {language: family}, mode, repeats, train_languages,
//   test_languages, languages, realization {dim, noise_sigma, seed,
//   family_shift {family: {flip_features, offset_scale}}}, training
//   {learning_rate, epochs, l2}.
// Only target_feature is required.
struct ContrastConfig {
  ContrastSpec contrast;
  ContrastMode mode = ContrastMode::kSymbolic;
  std::optional<RealizationParams> realization;
  TrainingHyper training;
  int repeats = 1;
  std::vector<std::string> languages;  // leave-one-language-out
  std::vector<std::string> train_languages;
  std::vector<std::string> test_languages;
};

// Throws ParseError on malformed JSON, unknown keys or wrong types.
ContrastConfig ParseContrastConfig(std::string_view text);

RealizationParams ParseRealizationParams(const Json& json);

// {"language": weight, ...}. Validated with ValidatePrior.
LanguagePrior ParseLanguagePrior(std::string_view text);

// {lambda, max_size, epsilon_gain, decode {switch_penalty, top_k,
// min_duration, clamp_epsilon}}; missing keys keep their defaults.
InductionParams ParseInductionParams(std::string_view text);

}  // namespace phontypo

#endif  // PHONTYPO_REPORTS_H_
