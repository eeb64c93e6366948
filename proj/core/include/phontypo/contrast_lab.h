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

#ifndef PHONTYPO_CONTRAST_LAB_H_
#define PHONTYPO_CONTRAST_LAB_H_

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "phontypo/logistic.h"
#include "phontypo/realization.h"
#include "phontypo/typology_store.h"

namespace phontypo {

// A binary opposition along one distinctive feature, restricted to the
// segments matching `scope`.
struct ContrastSpec {
  std::string target_feature;
  std::vector<FeatureConstraint> scope;
  // Add every feature except the target to the classifier input.
  bool grounded = false;
  // Inputs of ungrounded symbolic mode. Empty means segment-class indicators.
  std::vector<std::string> context_features;
  // Family per language; overrides the family recorded in the database.
  std::map<std::string, std::string, std::less<>> language_family;
};

enum class ContrastMode { kSymbolic, kSynthetic };

std::string_view ContrastModeName(ContrastMode mode);
ContrastMode ParseContrastMode(std::string_view text);

// Throws UsageError if the target is missing, appears in the scope, or any
// named feature is unknown.
void ValidateContrast(const ContrastSpec& contrast, const FeatureSystem& features);

// Names of the input columns produced for `contrast` in `mode`, in order.
// Embedding dimensions are named "emb0", "emb1", ...
std::vector<std::string> InputColumnNames(const FeatureSystem& features,
                                          const ContrastSpec& contrast,
                                          ContrastMode mode,
                                          const std::optional<RealizationParams>& realization);

// One instance per eligible segment of each language (the union over the
// language's inventories) per repeat. Segments whose target value is
// unspecified are never eligible. Synthetic draws are distinct per
// (language, repeat). Throws EmptyDatasetError when nothing is eligible,
// UsageError for synthetic mode without realization params, NotFoundError
// for a language with no inventories.
std::vector<Instance> BuildContrastDataset(
    const TypologyDatabase& db, const ContrastSpec& contrast,
    const std::vector<std::string>& languages, ContrastMode mode,
    const std::optional<RealizationParams>& realization, int repeats);

struct LanguageResult {
  std::string language;
  std::size_t n_pos = 0;
  std::size_t n_neg = 0;
  double accuracy = 0.0;
};

struct ConsistencyReport {
  ContrastMode mode = ContrastMode::kSymbolic;
  bool grounded = false;
  std::vector<std::string> train_languages;
  std::vector<std::string> test_languages;
  // Held-out languages with at least one eligible instance, in input order.
  std::vector<LanguageResult> per_language;
  // Unweighted mean of per_language accuracies.
  double macro_accuracy = 0.0;
  double train_accuracy = 0.0;
  int epochs_run = 0;
  double final_loss = 0.0;
};

// Trains on `train_languages` only and scores each test language. Throws
// UsageError if the sets overlap or either is empty.
ConsistencyReport EvaluateHeldout(
    const TypologyDatabase& db, const ContrastSpec& contrast,
    const std::vector<std::string>& train_languages,
    const std::vector<std::string>& test_languages, ContrastMode mode,
    const std::optional<RealizationParams>& realization,
    const TrainingHyper& hyper, int repeats);

// One report per language, each holding out exactly that language. Folds run
// concurrently. Throws UsageError for fewer than two languages.
std::vector<ConsistencyReport> LeaveOneLanguageOut(
    const TypologyDatabase& db, const ContrastSpec& contrast,
    const std::vector<std::string>& languages, ContrastMode mode,
    const std::optional<RealizationParams>& realization,
    const TrainingHyper& hyper, int repeats);

}  // namespace phontypo

#endif  // PHONTYPO_CONTRAST_LAB_H_
