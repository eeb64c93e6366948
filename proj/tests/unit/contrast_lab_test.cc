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

#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "fixtures.h"
#include "oracles.h"
#include "phontypo/contrast_lab.h"
#include "phontypo/error.h"
#include "phontypo/logistic.h"
#include "phontypo/realization.h"
#include "phontypo/unicode.h"

namespace phontypo {
namespace {

using testing::FixtureDb;
using testing::SampleDb;

std::vector<Instance> Points(const std::vector<std::pair<double, int>>& xy) {
  std::vector<Instance> out;
  for (const auto& [x, y] : xy) out.push_back(Instance{{x}, y, "", ""});
  return out;
}

TEST(LogisticTest, SeparableData) {
  std::vector<Instance> data;
  for (int i = 0; i < 100; ++i) {
    data.push_back(Instance{{-1.0}, 0, "", ""});
    data.push_back(Instance{{1.0}, 1, "", ""});
  }
  const auto model = TrainClassifier(data, TrainingHyper{0.5, 500, 0.0});
  EXPECT_EQ(Accuracy(model, data), 1.0);
  EXPECT_LT(model.final_loss, LogisticLoss(data, std::vector<double>{0.0}, 0.0, 0.0));
}

TEST(LogisticTest, IdenticalInputsGiveMajorityRate) {
  const auto data = Points({{0.3, 1}, {0.3, 1}, {0.3, 1}, {0.3, 0}});
  const auto model = TrainClassifier(data, TrainingHyper{});
  EXPECT_DOUBLE_EQ(Accuracy(model, data), 0.75);
}

TEST(LogisticTest, GradientMatchesFiniteDifferencesAtZero) {
  const std::vector<Instance> data = {Instance{{1.0, -2.0}, 1, "", ""},
                                      Instance{{0.5, 0.5}, 0, "", ""},
                                      Instance{{-1.5, 1.0}, 0, "", ""},
                                      Instance{{2.0, 0.0}, 1, "", ""}};
  const std::vector<double> w = {0.0, 0.0};
  std::vector<double> analytic, numeric;
  double gb = 0.0, nb = 0.0;
  LogisticGradient(data, w, 0.0, 0.1, analytic, gb);
  testing::FiniteDifferenceGradient(data, w, 0.0, 0.1, 1e-5, numeric, nb);
  analytic.push_back(gb);
  numeric.push_back(nb);
  EXPECT_LE(testing::RelativeError(analytic, numeric), 1e-5);
}

TEST(LogisticTest, PermutationInvariance) {
  std::mt19937_64 rng(6);
  std::normal_distribution<double> x(0.0, 1.0);
  std::vector<Instance> data;
  for (int i = 0; i < 40; ++i) {
    Instance inst{{x(rng), x(rng), x(rng)}, 0, "", ""};
    inst.label = inst.input[0] + 0.3 * inst.input[1] + 0.5 * x(rng) > 0 ? 1 : 0;
    data.push_back(inst);
  }
  const auto a = TrainClassifier(data, TrainingHyper{0.3, 200, 0.01});
  std::shuffle(data.begin(), data.end(), rng);
  const auto b = TrainClassifier(data, TrainingHyper{0.3, 200, 0.01});
  EXPECT_EQ(a.weights, b.weights);
  EXPECT_EQ(a.bias, b.bias);
}

TEST(LogisticTest, Errors) {
  EXPECT_THROW(TrainClassifier({}, TrainingHyper{}), EmptyDatasetError);
  EXPECT_THROW(TrainClassifier(Points({{1.0, 1}, {2.0, 1}}), TrainingHyper{}),
               DegenerateDataError);
  std::vector<Instance> ragged = Points({{1.0, 1}, {2.0, 0}});
  ragged[1].input.push_back(3.0);
  EXPECT_THROW(TrainClassifier(ragged, TrainingHyper{}), DimensionError);
}

// Two languages sharing four segments over features (f1, f2, target).
TypologyDatabase TwoLanguageDb() {
  std::vector<testing::FixtureRow> rows;
  for (const char* lang : {"Aa", "Bb"}) {
    const std::string id = std::string(lang) == "Aa" ? "1" : "2";
    rows.push_back({id, lang, "a", "vowel", "+-+", "F"});
    rows.push_back({id, lang, "b", "consonant", "--+", "F"});
    rows.push_back({id, lang, "c", "consonant", "+--", "F"});
    rows.push_back({id, lang, "d", "consonant", "---", "F"});
  }
  return FixtureDb({"f1", "f2", "target"}, rows);
}

TEST(ContrastDatasetTest, SymbolicFixtureHasEightInstances) {
  const auto db = TwoLanguageDb();
  ContrastSpec spec;
  spec.target_feature = "target";
  const auto data =
      BuildContrastDataset(db, spec, {"Aa", "Bb"}, ContrastMode::kSymbolic, std::nullopt, 1);
  ASSERT_EQ(data.size(), 8u);
  const std::map<std::string, int> expected = {{"a", 1}, {"b", 1}, {"c", 0}, {"d", 0}};
  for (const auto& inst : data) EXPECT_EQ(inst.label, expected.at(inst.glyph)) << inst.glyph;
  EXPECT_EQ(InputColumnNames(db.feature_system(), spec, ContrastMode::kSymbolic, std::nullopt)
                .size(),
            data[0].input.size());
}

TEST(ContrastDatasetTest, BackVowels) {
  const auto& db = SampleDb();
  ContrastSpec spec;
  spec.target_feature = "back";
  spec.scope = {{"syllabic", Ternary::kPlus}};
  const std::vector<std::string> languages = {"Tamil", "Hindi", "Spanish"};
  const auto data =
      BuildContrastDataset(db, spec, languages, ContrastMode::kSymbolic, std::nullopt, 2);
  std::size_t expected = 0;
  const std::size_t back = db.feature_system().IndexOf("back");
  for (const auto& lang : languages) {
    std::set<std::string> glyphs;
    for (const Inventory* inv : InventoriesForLanguage(db, lang)) {
      for (const auto& seg : db.SegmentsOf(*inv)) {
        if (SegmentMatches(db.feature_system(), seg.features, spec.scope) &&
            IsSpecified(seg.features.value(back))) {
          glyphs.insert(seg.glyph);
        }
      }
    }
    expected += 2 * glyphs.size();
  }
  EXPECT_EQ(data.size(), expected);
  for (const auto& inst : data) {
    EXPECT_EQ(inst.label, db.FindSegment(inst.glyph)->features.value(back) == Ternary::kPlus);
  }
}

TEST(ContrastDatasetTest, Errors) {
  const auto& db = SampleDb();
  ContrastSpec spec;
  spec.target_feature = "back";
  spec.scope = {{"syllabic", Ternary::kPlus}, {"consonantal", Ternary::kPlus},
                {"sonorant", Ternary::kMinus}};
  EXPECT_THROW(BuildContrastDataset(db, spec, {"Tamil"}, ContrastMode::kSymbolic, std::nullopt, 1),
               EmptyDatasetError);
  spec.scope.clear();
  EXPECT_THROW(
      BuildContrastDataset(db, spec, {"Tamil"}, ContrastMode::kSynthetic, std::nullopt, 1),
      UsageError);
  EXPECT_THROW(BuildContrastDataset(db, spec, {"Qqq"}, ContrastMode::kSymbolic, std::nullopt, 1),
               NotFoundError);
  spec.scope = {{"back", Ternary::kPlus}};
  EXPECT_THROW(ValidateContrast(spec, db.feature_system()), UsageError);
}

TEST(ContrastDatasetTest, GroundedInputsExcludeTarget) {
  const auto db = TwoLanguageDb();
  ContrastSpec spec;
  spec.target_feature = "target";
  spec.grounded = true;
  const auto names =
      InputColumnNames(db.feature_system(), spec, ContrastMode::kSymbolic, std::nullopt);
  EXPECT_EQ(names, (std::vector<std::string>{"f1", "f2"}));
  RealizationParams rp;
  rp.dim = 4;
  const auto synth = InputColumnNames(db.feature_system(), spec, ContrastMode::kSynthetic, rp);
  EXPECT_EQ(synth, (std::vector<std::string>{"emb0", "emb1", "emb2", "emb3", "f1", "f2"}));
}

TEST(RealizationTest, Determinism) {
  const auto& db = SampleDb();
  RealizationParams rp;
  rp.seed = 3;
  const Segment& seg = *db.FindSegment("t");
  EXPECT_EQ(SynthRealization(db.feature_system(), seg, "F", rp, 5),
            SynthRealization(db.feature_system(), seg, "F", rp, 5));
  EXPECT_NE(SynthRealization(db.feature_system(), seg, "F", rp, 5),
            SynthRealization(db.feature_system(), seg, "F", rp, 6));
  rp.dim = 0;
  EXPECT_THROW(ValidateRealization(rp), UsageError);
}

TEST(RealizationTest, NoiselessIdenticalVectorsCoincide) {
  const auto& db = SampleDb();
  RealizationParams rp;
  rp.noise_sigma = 0.0;
  Segment a = *db.FindSegment("t");
  Segment b = a;
  b.glyph = "t_copy";
  EXPECT_EQ(SynthRealization(db.feature_system(), a, "F", rp, 0),
            SynthRealization(db.feature_system(), b, "F", rp, 9));
}

TEST(RealizationTest, FlipDoublesProjectedComponent) {
  const auto& db = SampleDb();
  RealizationParams rp;
  rp.noise_sigma = 0.0;
  rp.family_shift["F"].flip_features = {"anterior"};
  const SyntheticRealizer realizer(db.feature_system(), rp);
  const std::size_t anterior = db.feature_system().IndexOf("anterior");
  const auto column = realizer.ProjectionColumn(anterior);
  for (const char* glyph : {"t", "ʈ"}) {
    const Segment& seg = *db.FindSegment(NormalizeGlyph(glyph));
    const double sign = TernarySign(seg.features.value(anterior));
    ASSERT_NE(sign, 0.0);
    const auto f = realizer.Realize(seg, "F", 0);
    const auto g = realizer.Realize(seg, "G", 0);
    for (int k = 0; k < rp.dim; ++k) {
      EXPECT_NEAR(g[k] - f[k], 2 * sign * column[k], 1e-12);
    }
  }
}

// target = f1 AND f2, over three languages.
TypologyDatabase DeterministicTargetDb() {
  std::vector<testing::FixtureRow> rows;
  int id = 1;
  for (const char* lang : {"Aa", "Bb", "Cc"}) {
    const std::string inv = std::to_string(id++);
    rows.push_back({inv, lang, "a", "consonant", "+++", ""});
    rows.push_back({inv, lang, "b", "consonant", "+--", ""});
    rows.push_back({inv, lang, "c", "consonant", "-+-", ""});
    rows.push_back({inv, lang, "d", "consonant", "---", ""});
  }
  return FixtureDb({"f1", "f2", "target"}, rows);
}

TEST(LeaveOneLanguageOutTest, DeterministicTargetIsLearnedInEveryFold) {
  const auto db = DeterministicTargetDb();
  ContrastSpec spec;
  spec.target_feature = "target";
  spec.grounded = true;
  const auto folds = LeaveOneLanguageOut(db, spec, {"Aa", "Bb", "Cc"}, ContrastMode::kSymbolic,
                                         std::nullopt, TrainingHyper{0.5, 2000, 0.0}, 1);
  ASSERT_EQ(folds.size(), 3u);
  for (std::size_t i = 0; i < folds.size(); ++i) {
    ASSERT_EQ(folds[i].test_languages.size(), 1u);
    EXPECT_EQ(folds[i].test_languages[0], std::vector<std::string>({"Aa", "Bb", "Cc"})[i]);
    EXPECT_EQ(folds[i].macro_accuracy, 1.0);
  }
  EXPECT_THROW(LeaveOneLanguageOut(db, spec, {"Aa"}, ContrastMode::kSymbolic, std::nullopt,
                                   TrainingHyper{}, 1),
               UsageError);
}

TEST(EvaluateHeldoutTest, OverlappingSetsAreRejected) {
  const auto db = DeterministicTargetDb();
  ContrastSpec spec;
  spec.target_feature = "target";
  spec.grounded = true;
  EXPECT_THROW(EvaluateHeldout(db, spec, {"Aa"}, {"Aa"}, ContrastMode::kSymbolic, std::nullopt,
                               TrainingHyper{}, 1),
               UsageError);
  EXPECT_THROW(EvaluateHeldout(db, spec, {"Aa"}, {}, ContrastMode::kSymbolic, std::nullopt,
                               TrainingHyper{}, 1),
               UsageError);
}

ContrastSpec AnteriorSpec() {
  ContrastSpec spec;
  spec.target_feature = "anterior";
  spec.scope = {{"coronal", Ternary::kPlus}, {"consonantal", Ternary::kPlus}};
  return spec;
}

double HeldoutAccuracy(double noise, bool flip) {
  RealizationParams rp;
  rp.seed = 42;
  rp.noise_sigma = noise;
  if (flip) rp.family_shift["Indo-Aryan"].flip_features = {"anterior"};
  return EvaluateHeldout(SampleDb(), AnteriorSpec(), {"Tamil", "Malayalam", "Telugu", "Kannada"},
                         {"Bengali", "Hindi", "Marathi"}, ContrastMode::kSynthetic, rp,
                         TrainingHyper{}, 10)
      .macro_accuracy;
}

TEST(EvaluateHeldoutTest, ConsistentRealizationTransfers) {
  EXPECT_GE(HeldoutAccuracy(0.1, false), 0.95);
}

TEST(EvaluateHeldoutTest, FamilyFlipBreaksTransfer) {
  EXPECT_LT(HeldoutAccuracy(0.1, true), 0.5);
}

TEST(EvaluateHeldoutTest, AccuracyDegradesWithNoise) {
  double previous = 1.0 + 1e-12;
  for (double noise : {0.1, 0.5, 2.0}) {
    const double acc = HeldoutAccuracy(noise, false);
    EXPECT_LE(acc, previous) << noise;
    previous = acc;
  }
  EXPECT_LT(previous, 0.9);
}

TEST(EvaluateHeldoutTest, ReportListsHeldOutLanguagesInOrder) {
  RealizationParams rp;
  rp.seed = 1;
  const auto report = EvaluateHeldout(SampleDb(), AnteriorSpec(), {"Tamil", "Telugu"},
                                      {"Marathi", "Hindi"}, ContrastMode::kSynthetic, rp,
                                      TrainingHyper{}, 2);
  ASSERT_EQ(report.per_language.size(), 2u);
  EXPECT_EQ(report.per_language[0].language, "Marathi");
  EXPECT_EQ(report.per_language[1].language, "Hindi");
  EXPECT_DOUBLE_EQ(report.macro_accuracy,
                   (report.per_language[0].accuracy + report.per_language[1].accuracy) / 2);
}

}  // namespace
}  // namespace phontypo
