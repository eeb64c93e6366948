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

#include "phontypo/inventory_induction.h"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <limits>
#include <optional>
#include <set>

#include "phontypo/error.h"
#include "phontypo/parallel.h"
#include "phontypo/unicode.h"

namespace phontypo {

std::string_view SimilarityMetricName(SimilarityMetric metric) {
  return metric == SimilarityMetric::kJaccard ? "jaccard" : "feature_match";
}

SimilarityMetric ParseSimilarityMetric(std::string_view text) {
  if (text == "jaccard") return SimilarityMetric::kJaccard;
  if (text == "feature_match" || text == "feature-match") {
    return SimilarityMetric::kFeatureMatch;
  }
  throw UsageError("metric must be 'jaccard' or 'feature_match', got '" +
                   std::string(text) + "'");
}

namespace {

std::vector<Segment> CheckedSegments(const TypologyDatabase& db, const Inventory& inv) {
  for (const auto& g : inv.glyphs) {
    if (!db.segments().count(g)) {
      throw NotFoundError("inventory '" + inv.inventory_id + "' uses unknown glyph '" +
                              g + "'",
                          g);
    }
  }
  return db.SegmentsOf(inv);
}

double DirectedMeanDistance(const std::vector<Segment>& from,
                            const std::vector<Segment>& to) {
  double sum = 0.0;
  for (const auto& a : from) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& b : to) best = std::min(best, FeatureDistance(a.features, b.features));
    sum += best;
  }
  return sum / static_cast<double>(from.size());
}

bool Excluded(const std::vector<std::string>& exclude, std::string_view language) {
  const std::string key = AsciiLower(language);
  return std::any_of(exclude.begin(), exclude.end(),
                     [&](const std::string& e) { return AsciiLower(e) == key; });
}

std::vector<RankedLanguage> TopK(std::vector<RankedLanguage> ranked, std::size_t k) {
  std::sort(ranked.begin(), ranked.end(),
            [](const RankedLanguage& a, const RankedLanguage& b) {
              if (a.score != b.score) return a.score > b.score;
              return a.language < b.language;
            });
  if (ranked.size() > k) ranked.resize(k);
  return ranked;
}

Inventory Normalized(Inventory inv) {
  for (auto& g : inv.glyphs) g = NormalizeGlyph(g);
  std::sort(inv.glyphs.begin(), inv.glyphs.end());
  inv.glyphs.erase(std::unique(inv.glyphs.begin(), inv.glyphs.end()), inv.glyphs.end());
  return inv;
}

}  // namespace

double InventorySimilarity(const TypologyDatabase& db, const Inventory& a,
                           const Inventory& b, SimilarityMetric metric) {
  if (metric == SimilarityMetric::kJaccard) {
    std::vector<std::string> common;
    std::set_intersection(a.glyphs.begin(), a.glyphs.end(), b.glyphs.begin(),
                          b.glyphs.end(), std::back_inserter(common));
    const std::size_t uni = a.glyphs.size() + b.glyphs.size() - common.size();
    return uni == 0 ? 1.0 : static_cast<double>(common.size()) / static_cast<double>(uni);
  }
  const auto sa = CheckedSegments(db, a);
  const auto sb = CheckedSegments(db, b);
  if (sa.empty() && sb.empty()) return 1.0;
  if (sa.empty() || sb.empty()) return 0.0;
  return 1.0 - 0.5 * (DirectedMeanDistance(sa, sb) + DirectedMeanDistance(sb, sa));
}

void ValidatePrior(const LanguagePrior& prior) {
  if (prior.weights.empty()) throw UsageError("language prior is empty");
  double sum = 0.0;
  for (const auto& [lang, w] : prior.weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw UsageError("language prior weight for '" + lang + "' must be >= 0");
    }
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw UsageError("language prior weights sum to " + std::to_string(sum) +
                     ", expected 1");
  }
}

std::vector<RankedLanguage> NearestLanguages(const TypologyDatabase& db,
                                             const LanguageAnchor& anchor,
                                             SimilarityMetric metric, std::size_t k) {
  if (k < 1) throw UsageError("k must be >= 1");
  std::vector<RankedLanguage> ranked;
  if (const auto* prior = std::get_if<LanguagePrior>(&anchor)) {
    ValidatePrior(*prior);
    for (const auto& [lang, w] : prior->weights) {
      if (InventoriesForLanguage(db, lang).empty()) {
        throw NotFoundError("prior names unknown language '" + lang + "'", lang);
      }
      ranked.push_back(RankedLanguage{lang, w});
    }
  } else if (const auto* seed = std::get_if<SeedInventoryAnchor>(&anchor)) {
    if (seed->seed.glyphs.empty()) throw UsageError("seed inventory is empty");
    const Inventory normalized = Normalized(seed->seed);
    for (const auto& [lang, ids] : db.by_language()) {
      if (Excluded(seed->exclude, lang)) continue;
      double best = 0.0;
      for (const auto& id : ids) {
        best = std::max(best,
                        InventorySimilarity(db, normalized, db.GetInventory(id), metric));
      }
      ranked.push_back(RankedLanguage{lang, best});
    }
  } else {
    const auto& fam = std::get<FamilyAnchor>(anchor);
    if (fam.family.empty()) throw UsageError("family anchor is empty");
    const std::string want = AsciiLower(fam.family);
    for (const auto& [lang, ids] : db.by_language()) {
      if (Excluded(fam.exclude, lang)) continue;
      for (const auto& id : ids) {
        if (AsciiLower(db.GetInventory(id).family) == want) {
          ranked.push_back(RankedLanguage{lang, 1.0});
          break;
        }
      }
    }
  }
  return TopK(std::move(ranked), k);
}

CandidatePool BuildCandidatePool(const TypologyDatabase& db,
                                 const std::vector<RankedLanguage>& ranked) {
  if (ranked.empty()) throw UsageError("no ranked languages for the candidate pool");
  bool any_positive = false;
  for (const auto& r : ranked) {
    if (!(r.score >= 0.0)) {
      throw UsageError("negative language score for '" + r.language + "'");
    }
    any_positive = any_positive || r.score > 0.0;
  }
  if (!any_positive) throw UsageError("all language scores are zero");

  CandidatePool pool;
  for (const auto& r : ranked) {
    if (r.score == 0.0) continue;
    const auto inventories = InventoriesForLanguage(db, r.language);
    if (inventories.empty()) {
      throw NotFoundError("no inventories for language '" + r.language + "'", r.language);
    }
    std::map<std::string, int, std::less<>> counts;
    for (const Inventory* inv : inventories) {
      for (const auto& g : inv->glyphs) ++counts[g];
    }
    const double n = static_cast<double>(inventories.size());
    for (const auto& [g, c] : counts) pool.entries[g] += r.score * (c / n);
  }
  return pool;
}

void ValidateInductionParams(const InductionParams& params) {
  if (!(params.lambda >= 0.0)) throw UsageError("lambda must be >= 0");
  if (params.max_size < 1) throw UsageError("max_size must be >= 1");
  if (!(params.epsilon_gain >= 0.0)) throw UsageError("epsilon_gain must be >= 0");
  ValidateDecodeParams(params.decode);
}

namespace {

// Per-stream frame scores of a fixed candidate list, so that subsets can be
// decoded without rescoring. Uses the same scorer as BuildLattice, which keeps
// the numbers bit-identical to ScoreSegments.
class ScoreCache {
 public:
  ScoreCache(const std::vector<FeatureStream>& streams, std::vector<Segment> candidates,
             const FeatureSystem& features, const DecodeParams& decode)
      : candidates_(std::move(candidates)), decode_(decode) {
    ValidateDecodeParams(decode_);
    matrices_.resize(streams.size());
    for (std::size_t i = 0; i < streams.size(); ++i) {
      std::vector<SegmentScorer> scorers;
      for (const auto& seg : candidates_) {
        scorers.emplace_back(features, streams[i].feature_names, seg);
      }
      auto& m = matrices_[i];
      m.assign(streams[i].size(), std::vector<double>(candidates_.size()));
      for (std::size_t t = 0; t < streams[i].size(); ++t) {
        for (std::size_t s = 0; s < candidates_.size(); ++s) {
          m[t][s] = scorers[s].Score(streams[i].frames[t], decode_.clamp_epsilon);
        }
      }
    }
  }

  // Penalized score of the subset given by candidate indices.
  InventoryScore Evaluate(const std::vector<std::size_t>& subset, double lambda) const {
    std::vector<Segment> segments;
    for (std::size_t s : subset) segments.push_back(candidates_[s]);
    InventoryScore score;
    score.per_stream.resize(matrices_.size());
    for (std::size_t i = 0; i < matrices_.size(); ++i) {
      std::vector<std::vector<double>> sub(matrices_[i].size(),
                                           std::vector<double>(subset.size()));
      for (std::size_t t = 0; t < sub.size(); ++t) {
        for (std::size_t j = 0; j < subset.size(); ++j) {
          sub[t][j] = matrices_[i][t][subset[j]];
        }
      }
      const auto lattice = LatticeFromScores(segments, sub, decode_.top_k);
      score.per_stream[i] = DecodeBestPath(lattice, decode_).total_log_score;
    }
    return Finish(std::move(score), subset.size(), lambda);
  }

  static InventoryScore Finish(InventoryScore score, std::size_t size, double lambda) {
    score.fit = 0.0;
    for (double f : score.per_stream) score.fit += f;
    score.penalty = lambda * static_cast<double>(size) *
                    static_cast<double>(score.per_stream.size());
    score.penalized = score.fit - score.penalty;
    return score;
  }

  const std::vector<Segment>& candidates() const { return candidates_; }

 private:
  std::vector<Segment> candidates_;
  DecodeParams decode_;
  std::vector<std::vector<std::vector<double>>> matrices_;
};

}  // namespace

InventoryScore ScoreSegments(const std::vector<FeatureStream>& streams,
                             const std::vector<Segment>& segments,
                             const FeatureSystem& features, const InductionParams& params) {
  ValidateInductionParams(params);
  if (streams.empty()) throw UsageError("no streams to score");
  if (segments.empty()) throw UsageError("cannot score an empty inventory");
  InventoryScore score;
  score.per_stream.resize(streams.size());
  ParallelFor(streams.size(), [&](std::size_t i) {
    const auto lattice = BuildLattice(streams[i], segments, features, params.decode);
    score.per_stream[i] = DecodeBestPath(lattice, params.decode).total_log_score;
  });
  return ScoreCache::Finish(std::move(score), segments.size(), params.lambda);
}

InventoryScore ScoreInventory(const std::vector<FeatureStream>& streams,
                              const TypologyDatabase& db, const Inventory& inventory,
                              const InductionParams& params) {
  return ScoreSegments(streams, CheckedSegments(db, inventory), db.feature_system(), params);
}

InventoryScore EmptyInventoryScore(const std::vector<FeatureStream>& streams) {
  InventoryScore score;
  score.per_stream.assign(streams.size(), -std::numeric_limits<double>::infinity());
  return ScoreCache::Finish(std::move(score), 0, 0.0);
}

InductionResult InduceInventory(const std::vector<FeatureStream>& streams,
                                const TypologyDatabase& db, const CandidatePool& pool,
                                const InductionParams& params) {
  ValidateInductionParams(params);
  if (pool.entries.empty()) throw UsageError("candidate pool is empty");
  if (streams.empty()) throw UsageError("no streams for induction");

  std::vector<Segment> candidates;
  std::vector<double> weights;
  for (const auto& [g, w] : pool.entries) {
    const Segment* seg = db.FindSegment(g);
    if (!seg) throw NotFoundError("pool glyph '" + g + "' is not in the database", g);
    candidates.push_back(*seg);
    weights.push_back(w);
  }
  const ScoreCache cache(streams, candidates, db.feature_system(), params.decode);

  InductionResult result;
  result.score = EmptyInventoryScore(streams);
  std::vector<std::size_t> chosen;
  std::vector<bool> used(candidates.size(), false);
  while (chosen.size() < params.max_size) {
    std::vector<std::optional<InventoryScore>> trial(candidates.size());
    ParallelFor(candidates.size(), [&](std::size_t c) {
      if (used[c]) return;
      auto subset = chosen;
      subset.push_back(c);
      std::sort(subset.begin(), subset.end());
      trial[c] = cache.Evaluate(subset, params.lambda);
    });
    // Ranking by penalized score equals ranking by gain, and stays defined on
    // the first step where the baseline is -inf.
    std::size_t best = candidates.size();
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      if (!trial[c]) continue;
      // Candidates are in glyph order, so strict comparisons keep the
      // earlier glyph on a full tie.
      if (best == candidates.size() || trial[c]->penalized > trial[best]->penalized ||
          (trial[c]->penalized == trial[best]->penalized && weights[c] > weights[best])) {
        best = c;
      }
    }
    const double best_gain = best == candidates.size()
                                 ? 0.0
                                 : trial[best]->penalized - result.score.penalized;
    if (best == candidates.size() || !(best_gain > params.epsilon_gain)) break;
    used[best] = true;
    chosen.push_back(best);
    std::sort(chosen.begin(), chosen.end());
    result.trace.push_back(SelectionStep{candidates[best].glyph, best_gain});
    result.score = std::move(*trial[best]);
  }
  for (std::size_t c : chosen) result.inventory.glyphs.push_back(candidates[c].glyph);
  return result;
}

LambdaCalibration CalibrateLambda(const std::vector<FeatureStream>& streams,
                                  const TypologyDatabase& db,
                                  const std::vector<std::string>& planted,
                                  const std::vector<std::string>& extras,
                                  const DecodeParams& decode) {
  if (planted.size() < 2) throw UsageError("calibration needs at least 2 planted segments");
  if (extras.empty()) throw UsageError("calibration needs at least 1 extra segment");
  if (streams.empty()) throw UsageError("calibration needs streams");
  std::vector<Segment> candidates;
  std::set<std::string> seen;
  for (const auto* list : {&planted, &extras}) {
    for (const auto& g : *list) {
      const Segment* seg = db.FindSegment(g);
      if (!seg) throw NotFoundError("unknown glyph '" + g + "'", g);
      if (!seen.insert(seg->glyph).second) {
        throw UsageError("glyph '" + g + "' listed twice for calibration");
      }
      candidates.push_back(*seg);
    }
  }
  const ScoreCache cache(streams, candidates, db.feature_system(), decode);
  const double n = static_cast<double>(streams.size());
  std::vector<std::size_t> base(planted.size());
  for (std::size_t i = 0; i < base.size(); ++i) base[i] = i;
  const double fit = cache.Evaluate(base, 0.0).fit;

  LambdaCalibration cal;
  cal.min_removal_loss = std::numeric_limits<double>::infinity();
  for (std::size_t drop = 0; drop < planted.size(); ++drop) {
    std::vector<std::size_t> subset;
    for (std::size_t i : base) {
      if (i != drop) subset.push_back(i);
    }
    cal.min_removal_loss =
        std::min(cal.min_removal_loss, (fit - cache.Evaluate(subset, 0.0).fit) / n);
  }
  cal.max_addition_gain = -std::numeric_limits<double>::infinity();
  for (std::size_t add = planted.size(); add < candidates.size(); ++add) {
    auto superset = base;
    superset.push_back(add);
    cal.max_addition_gain =
        std::max(cal.max_addition_gain, (cache.Evaluate(superset, 0.0).fit - fit) / n);
  }
  const double lower = std::max(0.0, cal.max_addition_gain);
  cal.feasible = lower < cal.min_removal_loss;
  cal.lambda = cal.feasible ? 0.5 * (lower + cal.min_removal_loss) : 0.0;
  return cal;
}

AdmissibilityMode ParseAdmissibilityMode(std::string_view text) {
  if (text == "per_segment") return AdmissibilityMode::kPerSegment;
  if (text == "co_occurrence") return AdmissibilityMode::kCoOccurrence;
  throw UsageError("admissibility mode must be 'per_segment' or 'co_occurrence'");
}

AdmissibilityReport AdmissibilityFilter(const std::vector<std::string>& hypothesis,
                                        const TypologyDatabase& db, int min_attestation,
                                        AdmissibilityMode mode,
                                        double containment_threshold) {
  if (min_attestation < 1) throw UsageError("min_attestation must be >= 1");
  std::vector<std::string> glyphs;
  for (const auto& g : hypothesis) glyphs.push_back(NormalizeGlyph(g));
  std::sort(glyphs.begin(), glyphs.end());
  glyphs.erase(std::unique(glyphs.begin(), glyphs.end()), glyphs.end());

  AdmissibilityReport report;
  for (const auto& g : glyphs) {
    const int count = db.Attestation(g);
    if (count >= min_attestation) {
      report.kept.push_back(g);
    } else {
      report.removed.emplace_back(g, count);
    }
  }
  if (mode == AdmissibilityMode::kCoOccurrence) {
    double best = glyphs.empty() ? 1.0 : 0.0;
    for (const auto& [id, inv] : db.inventories()) {
      if (glyphs.empty()) break;
      std::size_t hits = 0;
      for (const auto& g : glyphs) hits += inv.Contains(g) ? 1 : 0;
      const double frac = static_cast<double>(hits) / static_cast<double>(glyphs.size());
      if (frac > best) {
        best = frac;
        report.best_inventory_id = id;
      }
    }
    report.containment = best;
    report.admissible = best >= containment_threshold;
  }
  return report;
}

}  // namespace phontypo
