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

#include "phontypo/stream_decoder.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "phontypo/error.h"

namespace phontypo {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kTieTolerance = 1e-9;

}  // namespace

void ValidateDecodeParams(const DecodeParams& params) {
  if (!(params.switch_penalty >= 0.0)) throw UsageError("switch_penalty must be >= 0");
  if (params.top_k < 1) throw UsageError("top_k must be >= 1");
  if (params.min_duration < 1) throw UsageError("min_duration must be >= 1");
  if (!(params.clamp_epsilon > 0.0 && params.clamp_epsilon < 0.5)) {
    throw UsageError("clamp_epsilon must lie in (0, 0.5)");
  }
}

SegmentScorer::SegmentScorer(const FeatureSystem& features,
                             const std::vector<std::string>& stream_features,
                             const Segment& segment) {
  if (segment.features.size() != features.size()) {
    throw DimensionError("segment '" + segment.glyph + "' does not match the feature system");
  }
  for (std::size_t c = 0; c < stream_features.size(); ++c) {
    const Ternary v = segment.features.value(features.IndexOf(stream_features[c]));
    if (IsSpecified(v)) columns_.emplace_back(c, v == Ternary::kPlus);
  }
}

double SegmentScorer::Score(const FeatureFrame& frame, double clamp_epsilon) const {
  if (columns_.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& [c, is_plus] : columns_) {
    const double p = std::clamp(frame.posteriors[c], clamp_epsilon, 1.0 - clamp_epsilon);
    sum += std::log(is_plus ? p : 1.0 - p);
  }
  return sum / static_cast<double>(columns_.size());
}

double SegmentFrameScore(const FeatureFrame& frame, const Segment& segment,
                         const FeatureSystem& features,
                         const std::vector<std::string>& stream_features,
                         const DecodeParams& params, bool* degenerate) {
  SegmentScorer scorer(features, stream_features, segment);
  if (degenerate) *degenerate = scorer.degenerate();
  return scorer.Score(frame, params.clamp_epsilon);
}

SegmentLattice LatticeFromScores(std::vector<Segment> candidates,
                                 const std::vector<std::vector<double>>& scores,
                                 int top_k) {
  if (candidates.empty()) throw UsageError("empty candidate set");
  if (top_k < 1) throw UsageError("top_k must be >= 1");
  const std::size_t n = candidates.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return candidates[a].glyph < candidates[b].glyph;
  });
  for (std::size_t i = 1; i < n; ++i) {
    if (candidates[order[i]].glyph == candidates[order[i - 1]].glyph) {
      throw UsageError("duplicate candidate '" + candidates[order[i]].glyph + "'");
    }
  }

  SegmentLattice lattice;
  lattice.candidates.reserve(n);
  for (std::size_t i : order) lattice.candidates.push_back(std::move(candidates[i]));

  const std::size_t keep = std::min<std::size_t>(n, static_cast<std::size_t>(top_k));
  lattice.arcs.resize(scores.size());
  for (std::size_t t = 0; t < scores.size(); ++t) {
    if (scores[t].size() != n) throw UsageError("score matrix is ragged");
    auto& arcs = lattice.arcs[t];
    arcs.reserve(n);
    for (std::size_t s = 0; s < n; ++s) {
      const double v = scores[t][order[s]];
      if (!std::isfinite(v)) throw UsageError("non-finite arc score");
      arcs.push_back(LatticeArc{s, v});
    }
    // Index order equals glyph order, so ties fall back to the index.
    std::stable_sort(arcs.begin(), arcs.end(), [](const LatticeArc& a, const LatticeArc& b) {
      return a.log_score > b.log_score;
    });
    arcs.resize(keep);
  }
  return lattice;
}

SegmentLattice BuildLattice(const FeatureStream& stream, std::vector<Segment> candidates,
                            const FeatureSystem& features, const DecodeParams& params) {
  ValidateDecodeParams(params);
  if (candidates.empty()) throw UsageError("empty candidate set");
  std::vector<SegmentScorer> scorers;
  scorers.reserve(candidates.size());
  for (const auto& seg : candidates) {
    scorers.emplace_back(features, stream.feature_names, seg);
  }
  std::vector<std::vector<double>> scores(stream.size(),
                                          std::vector<double>(candidates.size()));
  for (std::size_t t = 0; t < stream.size(); ++t) {
    for (std::size_t s = 0; s < candidates.size(); ++s) {
      scores[t][s] = scorers[s].Score(stream.frames[t], params.clamp_epsilon);
    }
  }
  std::vector<std::string> degenerate;
  for (std::size_t s = 0; s < candidates.size(); ++s) {
    if (scorers[s].degenerate()) degenerate.push_back(candidates[s].glyph);
  }
  SegmentLattice lattice = LatticeFromScores(std::move(candidates), scores, params.top_k);
  std::sort(degenerate.begin(), degenerate.end());
  lattice.degenerate_segments = std::move(degenerate);
  return lattice;
}

double ScoreAlignment(const SegmentLattice& lattice, const Alignment& alignment,
                      const DecodeParams& params) {
  if (!TilesFrames(alignment, lattice.frames())) {
    throw InfeasibleError("alignment does not tile the lattice frames");
  }
  double total = 0.0;
  for (std::size_t r = 0; r < alignment.runs.size(); ++r) {
    const auto& run = alignment.runs[r];
    if (r > 0) total -= params.switch_penalty;
    for (std::size_t t = run.start_frame; t <= run.end_frame; ++t) {
      bool found = false;
      for (const auto& arc : lattice.arcs[t]) {
        if (lattice.candidates[arc.segment].glyph == run.glyph) {
          total += arc.log_score;
          found = true;
          break;
        }
      }
      if (!found) {
        throw InfeasibleError("segment '" + run.glyph + "' has no arc at frame " +
                              std::to_string(t));
      }
    }
  }
  return total;
}

Alignment DecodeBestPath(const SegmentLattice& lattice, const DecodeParams& params) {
  ValidateDecodeParams(params);
  const std::size_t frames = lattice.frames();
  const std::size_t n = lattice.candidates.size();
  const auto m = static_cast<std::size_t>(params.min_duration);
  if (m > frames) {
    throw InfeasibleError("min_duration " + std::to_string(m) + " exceeds " +
                          std::to_string(frames) + " frames");
  }
  // Dense frame scores; kNegInf where a candidate was pruned.
  std::vector<double> score(frames * n, kNegInf);
  for (std::size_t t = 0; t < frames; ++t) {
    if (lattice.arcs[t].empty()) {
      throw InfeasibleError("frame " + std::to_string(t) + " has no arcs");
    }
    for (const auto& arc : lattice.arcs[t]) score[t * n + arc.segment] = arc.log_score;
  }
  auto at = [&](std::size_t t, std::size_t s) { return score[t * n + s]; };

  // back[(t * n + s) * m + (d - 1)]: best score of frames t+1.. given segment s
  // occupies frame t with a run of length min(d, m) so far.
  std::vector<double> back(frames * n * m, kNegInf);
  auto B = [&](std::size_t t, std::size_t s, std::size_t d) -> double& {
    return back[(t * n + s) * m + (d - 1)];
  };
  for (std::size_t s = 0; s < n; ++s) B(frames - 1, s, m) = 0.0;
  const double penalty = params.switch_penalty;
  for (std::size_t t = frames - 1; t-- > 0;) {
    // Best and runner-up switch targets at t+1, so each source can exclude
    // itself in O(1).
    double best1 = kNegInf, best2 = kNegInf;
    std::size_t arg1 = n;
    for (std::size_t s = 0; s < n; ++s) {
      const double v = at(t + 1, s) + B(t + 1, s, 1);
      if (v > best1) {
        best2 = best1;
        best1 = v;
        arg1 = s;
      } else if (v > best2) {
        best2 = v;
      }
    }
    for (std::size_t s = 0; s < n; ++s) {
      for (std::size_t d = 1; d <= m; ++d) {
        double v = at(t + 1, s) + B(t + 1, s, std::min(d + 1, m));
        if (d == m) {
          const double other = (s == arg1 ? best2 : best1) - penalty;
          v = std::max(v, other);
        }
        B(t, s, d) = v;
      }
    }
  }

  double best = kNegInf;
  for (std::size_t s = 0; s < n; ++s) best = std::max(best, at(0, s) + B(0, s, 1));
  if (best == kNegInf) {
    throw InfeasibleError("no labeling satisfies min_duration " + std::to_string(m));
  }
  const double floor = best - kTieTolerance * std::max(1.0, std::abs(best));

  // Forward pass: smallest glyph index whose best completion still reaches the
  // optimum (within tolerance), frame by frame.
  std::vector<std::size_t> labels(frames);
  std::size_t cur = n;
  for (std::size_t s = 0; s < n; ++s) {
    if (at(0, s) + B(0, s, 1) >= floor) {
      cur = s;
      break;
    }
  }
  std::size_t run = 1;
  double prefix = at(0, cur);
  labels[0] = cur;
  for (std::size_t t = 1; t < frames; ++t) {
    std::size_t pick = n;
    double pick_prefix = 0.0;
    for (std::size_t s = 0; s < n && pick == n; ++s) {
      if (s == cur) {
        const double p = prefix + at(t, s);
        if (p + B(t, s, std::min(run + 1, m)) >= floor) {
          pick = s;
          pick_prefix = p;
        }
      } else if (run >= m) {
        const double p = prefix - penalty + at(t, s);
        if (p + B(t, s, 1) >= floor) {
          pick = s;
          pick_prefix = p;
        }
      }
    }
    if (pick == n) throw InfeasibleError("internal: lost optimal path");
    run = pick == cur ? std::min(run + 1, m) : 1;
    cur = pick;
    prefix = pick_prefix;
    labels[t] = cur;
  }

  Alignment alignment;
  for (std::size_t t = 0; t < frames; ++t) {
    const std::string& glyph = lattice.candidates[labels[t]].glyph;
    if (alignment.runs.empty() || labels[t] != labels[t - 1]) {
      alignment.runs.push_back(AlignmentRun{glyph, t, t});
    } else {
      alignment.runs.back().end_frame = t;
    }
  }
  alignment.total_log_score = ScoreAlignment(lattice, alignment, params);
  return alignment;
}

Alignment ConstrainedDecode(const FeatureStream& stream, const TypologyDatabase& db,
                            const Inventory& inventory, const DecodeParams& params) {
  const SegmentLattice lattice =
      BuildLattice(stream, db.SegmentsOf(inventory), db.feature_system(), params);
  return DecodeBestPath(lattice, params);
}

}  // namespace phontypo
