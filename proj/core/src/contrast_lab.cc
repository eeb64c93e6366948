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

#include "phontypo/contrast_lab.h"

#include <algorithm>
#include <set>

#include "phontypo/error.h"
#include "phontypo/parallel.h"
#include "phontypo/rng.h"

namespace phontypo {

std::string_view ContrastModeName(ContrastMode mode) {
  return mode == ContrastMode::kSymbolic ? "symbolic" : "synthetic";
}

ContrastMode ParseContrastMode(std::string_view text) {
  if (text == "symbolic") return ContrastMode::kSymbolic;
  if (text == "synthetic") return ContrastMode::kSynthetic;
  throw UsageError("mode must be 'symbolic' or 'synthetic', got '" +
                   std::string(text) + "'");
}

void ValidateContrast(const ContrastSpec& contrast, const FeatureSystem& features) {
  if (contrast.target_feature.empty()) throw UsageError("contrast has no target feature");
  if (!features.Find(contrast.target_feature)) {
    throw UsageError("unknown target feature '" + contrast.target_feature + "'");
  }
  for (const auto& c : contrast.scope) {
    if (c.feature == contrast.target_feature) {
      throw UsageError("target feature '" + c.feature + "' also constrains the scope");
    }
    if (!features.Find(c.feature)) {
      throw UsageError("unknown scope feature '" + c.feature + "'");
    }
  }
  for (const auto& f : contrast.context_features) {
    if (!features.Find(f)) throw UsageError("unknown context feature '" + f + "'");
  }
}

namespace {

constexpr SegmentClass kClassOrder[] = {SegmentClass::kConsonant, SegmentClass::kVowel,
                                        SegmentClass::kTone, SegmentClass::kUnknown};

// Feature indices used as symbolic inputs. The target never appears.
std::vector<std::size_t> SymbolicColumns(const FeatureSystem& features,
                                         const ContrastSpec& contrast) {
  const std::size_t target = features.IndexOf(contrast.target_feature);
  std::vector<std::size_t> cols;
  if (contrast.grounded) {
    for (std::size_t j = 0; j < features.size(); ++j) {
      if (j != target) cols.push_back(j);
    }
  } else {
    for (const auto& name : contrast.context_features) {
      const std::size_t j = features.IndexOf(name);
      if (j != target) cols.push_back(j);
    }
  }
  return cols;
}

bool UsesClassIndicators(const ContrastSpec& contrast, ContrastMode mode) {
  return mode == ContrastMode::kSymbolic && !contrast.grounded &&
         contrast.context_features.empty();
}

std::string FamilyOf(const ContrastSpec& contrast,
                     const std::string& language,
                     const std::vector<const Inventory*>& inventories) {
  if (auto it = contrast.language_family.find(language);
      it != contrast.language_family.end()) {
    return it->second;
  }
  for (const Inventory* inv : inventories) {
    if (!inv->family.empty()) return inv->family;
  }
  return "";
}

// Union of a language's segments; the first inventory (by id) wins for a
// glyph listed by several.
std::vector<Segment> LanguageSegments(const TypologyDatabase& db,
                                      const std::vector<const Inventory*>& inventories) {
  std::map<std::string, Segment, std::less<>> merged;
  for (const Inventory* inv : inventories) {
    for (auto& seg : db.SegmentsOf(*inv)) {
      std::string key = seg.glyph;
      merged.try_emplace(std::move(key), std::move(seg));
    }
  }
  std::vector<Segment> out;
  out.reserve(merged.size());
  for (auto& [g, seg] : merged) out.push_back(std::move(seg));
  return out;
}

std::string DescribeScope(const std::vector<FeatureConstraint>& scope) {
  std::string out = "[";
  for (std::size_t i = 0; i < scope.size(); ++i) {
    if (i) out += ", ";
    out += scope[i].feature + "=" + std::string(TernarySymbol(scope[i].value));
  }
  return out + "]";
}

void CheckDisjoint(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::set<std::string> left(a.begin(), a.end());
  for (const auto& l : b) {
    if (left.count(l)) {
      throw UsageError("language '" + l + "' is in both the train and test sets");
    }
  }
}

}  // namespace

std::vector<std::string> InputColumnNames(
    const FeatureSystem& features, const ContrastSpec& contrast, ContrastMode mode,
    const std::optional<RealizationParams>& realization) {
  std::vector<std::string> names;
  if (mode == ContrastMode::kSynthetic) {
    if (!realization) throw UsageError("synthetic mode requires realization params");
    for (int k = 0; k < realization->dim; ++k) names.push_back("emb" + std::to_string(k));
    if (!contrast.grounded) return names;
  } else if (UsesClassIndicators(contrast, mode)) {
    for (SegmentClass c : kClassOrder) {
      names.push_back("class:" + std::string(SegmentClassName(c)));
    }
    return names;
  }
  for (std::size_t j : SymbolicColumns(features, contrast)) {
    names.push_back(features.name(j));
  }
  return names;
}

std::vector<Instance> BuildContrastDataset(
    const TypologyDatabase& db, const ContrastSpec& contrast,
    const std::vector<std::string>& languages, ContrastMode mode,
    const std::optional<RealizationParams>& realization, int repeats) {
  const FeatureSystem& features = db.feature_system();
  ValidateContrast(contrast, features);
  if (repeats < 1) throw UsageError("repeats must be >= 1");
  if (mode == ContrastMode::kSynthetic && !realization) {
    throw UsageError("synthetic mode requires realization params");
  }
  std::optional<SyntheticRealizer> realizer;
  if (mode == ContrastMode::kSynthetic) realizer.emplace(features, *realization);

  const std::size_t target = features.IndexOf(contrast.target_feature);
  const std::vector<std::size_t> symbolic = SymbolicColumns(features, contrast);
  const bool class_indicators = UsesClassIndicators(contrast, mode);

  std::vector<Instance> out;
  for (const auto& language : languages) {
    const auto inventories = InventoriesForLanguage(db, language);
    if (inventories.empty()) {
      throw NotFoundError("no inventories for language '" + language + "'", language);
    }
    const std::string family = FamilyOf(contrast, language, inventories);
    const std::uint64_t language_key = StreamKey(0).Add(language).value();
    for (const auto& seg : LanguageSegments(db, inventories)) {
      const Ternary t = seg.features.value(target);
      if (!IsSpecified(t)) continue;
      if (!SegmentMatches(features, seg.features, contrast.scope)) continue;
      for (int r = 0; r < repeats; ++r) {
        Instance inst;
        inst.label = t == Ternary::kPlus ? 1 : 0;
        inst.language = language;
        inst.glyph = seg.glyph;
        if (realizer) {
          inst.input = realizer->Realize(seg, family,
                                         language_key + static_cast<std::uint64_t>(r));
          if (contrast.grounded) {
            for (std::size_t j : symbolic) {
              inst.input.push_back(TernarySign(seg.features.value(j)));
            }
          }
        } else if (class_indicators) {
          for (SegmentClass c : kClassOrder) {
            inst.input.push_back(seg.segment_class == c ? 1.0 : 0.0);
          }
        } else {
          for (std::size_t j : symbolic) {
            inst.input.push_back(TernarySign(seg.features.value(j)));
          }
        }
        out.push_back(std::move(inst));
      }
    }
  }
  if (out.empty()) {
    throw EmptyDatasetError("no eligible segments for target '" +
                            contrast.target_feature + "' in scope " +
                            DescribeScope(contrast.scope));
  }
  return out;
}

ConsistencyReport EvaluateHeldout(
    const TypologyDatabase& db, const ContrastSpec& contrast,
    const std::vector<std::string>& train_languages,
    const std::vector<std::string>& test_languages, ContrastMode mode,
    const std::optional<RealizationParams>& realization,
    const TrainingHyper& hyper, int repeats) {
  if (train_languages.empty() || test_languages.empty()) {
    throw UsageError("train and test language sets must be non-empty");
  }
  CheckDisjoint(train_languages, test_languages);

  const auto train =
      BuildContrastDataset(db, contrast, train_languages, mode, realization, repeats);
  const Classifier model = TrainClassifier(train, hyper);

  ConsistencyReport report;
  report.mode = mode;
  report.grounded = contrast.grounded;
  report.train_languages = train_languages;
  report.test_languages = test_languages;
  report.train_accuracy = Accuracy(model, train);
  report.epochs_run = model.epochs_run;
  report.final_loss = model.final_loss;

  double sum = 0.0;
  for (const auto& language : test_languages) {
    std::vector<Instance> test;
    try {
      test = BuildContrastDataset(db, contrast, {language}, mode, realization, repeats);
    } catch (const EmptyDatasetError&) {
      continue;
    }
    LanguageResult result;
    result.language = language;
    for (const auto& inst : test) (inst.label ? result.n_pos : result.n_neg)++;
    result.accuracy = Accuracy(model, test);
    sum += result.accuracy;
    report.per_language.push_back(std::move(result));
  }
  if (report.per_language.empty()) {
    throw EmptyDatasetError("no held-out language has eligible segments");
  }
  report.macro_accuracy = sum / static_cast<double>(report.per_language.size());
  return report;
}

std::vector<ConsistencyReport> LeaveOneLanguageOut(
    const TypologyDatabase& db, const ContrastSpec& contrast,
    const std::vector<std::string>& languages, ContrastMode mode,
    const std::optional<RealizationParams>& realization,
    const TrainingHyper& hyper, int repeats) {
  if (languages.size() < 2) {
    throw UsageError("leave-one-language-out needs at least 2 languages");
  }
  std::set<std::string> unique(languages.begin(), languages.end());
  if (unique.size() != languages.size()) throw UsageError("duplicate language in fold list");

  std::vector<ConsistencyReport> reports(languages.size());
  ParallelFor(languages.size(), [&](std::size_t i) {
    std::vector<std::string> train;
    for (std::size_t j = 0; j < languages.size(); ++j) {
      if (j != i) train.push_back(languages[j]);
    }
    reports[i] = EvaluateHeldout(db, contrast, train, {languages[i]}, mode,
                                 realization, hyper, repeats);
  });
  return reports;
}

}  // namespace phontypo
