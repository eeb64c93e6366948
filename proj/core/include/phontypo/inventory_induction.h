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

#ifndef PHONTYPO_INVENTORY_INDUCTION_H_
#define PHONTYPO_INVENTORY_INDUCTION_H_

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "phontypo/feature_stream.h"
#include "phontypo/stream_decoder.h"
#include "phontypo/typology_store.h"

namespace phontypo {

enum class SimilarityMetric { kJaccard, kFeatureMatch };

std::string_view SimilarityMetricName(SimilarityMetric metric);
SimilarityMetric ParseSimilarityMetric(std::string_view text);

// jaccard: |A n B| / |A u B| over glyphs. feature_match: 1 minus the average
// of the two directed mean nearest-segment feature distances.
double InventorySimilarity(const TypologyDatabase& db, const Inventory& a,
                           const Inventory& b, SimilarityMetric metric);

// Externally supplied language-identification posterior.
struct LanguagePrior {
  std::map<std::string, double, std::less<>> weights;
};

// Throws UsageError unless weights are >= 0 and sum to 1 within 1e-9.
void ValidatePrior(const LanguagePrior& prior);

struct SeedInventoryAnchor {
  Inventory seed;
  // Languages left out of the ranking, e.g. the seed's own language.
  std::vector<std::string> exclude;
};

// Genealogical anchor: languages of `family` score 1.
struct FamilyAnchor {
  std::string family;
  std::vector<std::string> exclude;
};

using LanguageAnchor = std::variant<LanguagePrior, SeedInventoryAnchor, FamilyAnchor>;

struct RankedLanguage {
  std::string language;
  double score = 0.0;

  friend bool operator==(const RankedLanguage&, const RankedLanguage&) = default;
};

// Top-k languages, best first; ties broken by language key. Prior anchors
// rank by weight (languages must exist in the database); seed anchors by the
// best similarity to any of a language's inventories. Throws UsageError for
// k < 1 or an empty anchor.
std::vector<RankedLanguage> NearestLanguages(const TypologyDatabase& db,
                                             const LanguageAnchor& anchor,
                                             SimilarityMetric metric, std::size_t k);

struct CandidatePool {
  // glyph -> sum over ranked languages of score * fraction of the language's
  // inventories containing the glyph. All weights > 0.
  std::map<std::string, double, std::less<>> entries;

  std::size_t size() const { return entries.size(); }
};

// Throws UsageError if `ranked` is empty, has a negative score or all scores
// are zero.
CandidatePool BuildCandidatePool(const TypologyDatabase& db,
                                 const std::vector<RankedLanguage>& ranked);

struct InductionParams {
  double lambda = 0.0;  // per-segment, per-stream size penalty
  std::size_t max_size = 64;
  double epsilon_gain = 0.0;
  DecodeParams decode;
};

void ValidateInductionParams(const InductionParams& params);

struct InventoryScore {
  double fit = 0.0;      // sum of per-stream best-path log scores
  double penalty = 0.0;  // lambda * |inventory| * n_streams
  double penalized = 0.0;
  std::vector<double> per_stream;
};

// Decodes every stream against `segments` (a candidate inventory). Streams are
// decoded concurrently; the sum is taken in stream order. Throws UsageError
// for empty inputs and propagates decode errors.
InventoryScore ScoreSegments(const std::vector<FeatureStream>& streams,
                             const std::vector<Segment>& segments,
                             const FeatureSystem& features, const InductionParams& params);

InventoryScore ScoreInventory(const std::vector<FeatureStream>& streams,
                              const TypologyDatabase& db, const Inventory& inventory,
                              const InductionParams& params);

// Score of the empty inventory, the starting point of greedy selection. No
// labeling exists, so every per-stream fit is -inf; the first greedy step
// therefore always adds the best singleton and records an infinite gain.
InventoryScore EmptyInventoryScore(const std::vector<FeatureStream>& streams);

struct SelectionStep {
  std::string glyph;
  double gain = 0.0;  // penalized score after minus before; +inf on step one
};

struct InductionResult {
  Inventory inventory;  // glyphs only; metadata left empty
  std::vector<SelectionStep> trace;
  InventoryScore score;
};

// Greedy forward selection from the empty inventory: add the pool glyph with
// the largest penalized-score gain (ties: higher pool weight, then glyph
// order) while that gain exceeds epsilon_gain and the size is below max_size.
// Candidate evaluation within a step runs concurrently. Throws UsageError for
// an empty pool.
InductionResult InduceInventory(const std::vector<FeatureStream>& streams,
                                const TypologyDatabase& db, const CandidatePool& pool,
                                const InductionParams& params);

// Feasible lambda interval from single-segment edits of a planted inventory:
// the planted set beats every one-removed subset when lambda < lower_removal
// and every one-added superset when lambda > upper_addition.
struct LambdaCalibration {
  double min_removal_loss = 0.0;  // per stream, over planted segments
  double max_addition_gain = 0.0;  // per stream, over extra segments
  bool feasible = false;
  double lambda = 0.0;  // midpoint when feasible
};

LambdaCalibration CalibrateLambda(const std::vector<FeatureStream>& streams,
                                  const TypologyDatabase& db,
                                  const std::vector<std::string>& planted,
                                  const std::vector<std::string>& extras,
                                  const DecodeParams& decode);

enum class AdmissibilityMode { kPerSegment, kCoOccurrence };

AdmissibilityMode ParseAdmissibilityMode(std::string_view text);

struct AdmissibilityReport {
  std::vector<std::string> kept;
  std::vector<std::pair<std::string, int>> removed;  // glyph, attestation
  // Co-occurrence mode only: max over inventories of |H n I| / |H|.
  std::optional<double> containment;
  std::string best_inventory_id;
  bool admissible = true;
};

// per_segment keeps glyphs attested in >= min_attestation inventories.
// co_occurrence additionally flags the whole hypothesis inadmissible when its
// best containment is below `containment_threshold`. Throws UsageError if
// min_attestation < 1.
AdmissibilityReport AdmissibilityFilter(const std::vector<std::string>& hypothesis,
                                        const TypologyDatabase& db, int min_attestation,
                                        AdmissibilityMode mode,
                                        double containment_threshold = 0.8);

}  // namespace phontypo

#endif  // PHONTYPO_INVENTORY_INDUCTION_H_
