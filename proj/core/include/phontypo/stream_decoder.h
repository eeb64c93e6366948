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

#ifndef PHONTYPO_STREAM_DECODER_H_
#define PHONTYPO_STREAM_DECODER_H_

#include <cstddef>
#include <string>
#include <vector>

#include "phontypo/feature_stream.h"
#include "phontypo/typology_store.h"

namespace phontypo {

struct DecodeParams {
  double switch_penalty = 0.0;  // log-score cost per segment change, >= 0
  int top_k = 64;               // arcs kept per frame
  int min_duration = 1;         // frames per run, including first and last
  double clamp_epsilon = 1e-6;  // posteriors clamped to [eps, 1 - eps]
};

// Throws UsageError.
void ValidateDecodeParams(const DecodeParams& params);

// Maps a segment onto the columns of a stream: the features that are
// specified on the segment and present in the stream.
class SegmentScorer {
 public:
  // Throws NotFoundError if a stream feature is not in `features`.
  SegmentScorer(const FeatureSystem& features,
                const std::vector<std::string>& stream_features,
                const Segment& segment);

  // Mean over the bound features of log p (for '+') or log(1 - p) (for '-').
  // 0 when no feature is bound; see degenerate().
  double Score(const FeatureFrame& frame, double clamp_epsilon) const;

  bool degenerate() const { return columns_.empty(); }

 private:
  std::vector<std::pair<std::size_t, bool>> columns_;  // (column, is_plus)
};

double SegmentFrameScore(const FeatureFrame& frame, const Segment& segment,
                         const FeatureSystem& features,
                         const std::vector<std::string>& stream_features,
                         const DecodeParams& params, bool* degenerate = nullptr);

struct LatticeArc {
  std::size_t segment = 0;  // index into SegmentLattice::candidates
  double log_score = 0.0;
};

struct SegmentLattice {
  // Sorted by glyph; index order is the tie-break order.
  std::vector<Segment> candidates;
  // Per frame, descending by score, ties by glyph, at most top_k entries.
  std::vector<std::vector<LatticeArc>> arcs;
  // Candidates with no scoreable feature (score 0 everywhere).
  std::vector<std::string> degenerate_segments;

  std::size_t frames() const { return arcs.size(); }
};

// Builds a lattice from a dense score matrix (`scores[t][s]` for
// candidates[s]); keeps the top_k arcs per frame. Candidates are sorted by
// glyph and the score columns permuted to match. Throws UsageError for an
// empty or duplicated candidate set or a ragged matrix.
SegmentLattice LatticeFromScores(std::vector<Segment> candidates,
                                 const std::vector<std::vector<double>>& scores,
                                 int top_k);

SegmentLattice BuildLattice(const FeatureStream& stream,
                            std::vector<Segment> candidates,
                            const FeatureSystem& features,
                            const DecodeParams& params);

// Exact best labeling under sum(arc scores) - switch_penalty * changes with
// every run at least min_duration long. Scores within 1e-9 (relative) of the
// optimum count as ties; among tied labelings the lexicographically smallest
// glyph sequence wins. Throws InfeasibleError for a frame with no arcs, for
// min_duration > T (including T = 0) or when no labeling satisfies
// min_duration.
Alignment DecodeBestPath(const SegmentLattice& lattice, const DecodeParams& params);

// Recomputes an alignment's score from the lattice. Throws InfeasibleError
// if a run uses a segment without an arc on one of its frames.
double ScoreAlignment(const SegmentLattice& lattice, const Alignment& alignment,
                      const DecodeParams& params);

// Decode with candidates restricted to the inventory's segments.
Alignment ConstrainedDecode(const FeatureStream& stream, const TypologyDatabase& db,
                            const Inventory& inventory, const DecodeParams& params);

}  // namespace phontypo

#endif  // PHONTYPO_STREAM_DECODER_H_
