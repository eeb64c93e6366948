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

#ifndef PHONTYPO_FEATURE_STREAM_H_
#define PHONTYPO_FEATURE_STREAM_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "phontypo/typology_store.h"

namespace phontypo {

// Posterior probability that each stream feature is '+'. Stored values may be
// exactly 0 or 1; clamping happens at scoring time.
struct FeatureFrame {
  std::vector<double> posteriors;

  friend bool operator==(const FeatureFrame&, const FeatureFrame&) = default;
};

// Per-feature detector outputs resampled onto one frame grid.
struct FeatureStream {
  std::vector<std::string> feature_names;
  std::vector<FeatureFrame> frames;
  double frame_period = 0.01;  // seconds

  std::size_t size() const { return frames.size(); }

  friend bool operator==(const FeatureStream&, const FeatureStream&) = default;
};

// Throws ParseError on ragged frames, posteriors outside [0,1], duplicate
// feature names or a non-positive frame period.
void ValidateStream(const FeatureStream& stream);

// TSV: header `time<TAB>feat1<TAB>...`, one row per frame, time in seconds.
// Numbers use the shortest representation that reads back exactly.
std::string WriteStreamTsv(const FeatureStream& stream);

// Inverse of WriteStreamTsv. The frame period is taken from the first two
// time stamps; streams with fewer than two frames get the default period.
FeatureStream ReadStreamTsv(std::string_view text);

struct AlignmentRun {
  std::string glyph;
  std::size_t start_frame = 0;
  std::size_t end_frame = 0;  // inclusive

  std::size_t length() const { return end_frame - start_frame + 1; }

  friend bool operator==(const AlignmentRun&, const AlignmentRun&) = default;
};

struct Alignment {
  std::vector<AlignmentRun> runs;
  double total_log_score = 0.0;

  // Per-frame glyph labels.
  std::vector<std::string> Labels() const;
};

// True if the runs tile [0, frames) in order without gaps or overlaps and
// adjacent runs carry different glyphs.
bool TilesFrames(const Alignment& alignment, std::size_t frames);

struct StreamGenParams {
  std::size_t n_frames = 200;
  double mean_run_length = 8.0;
  double mu_plus = 0.9;
  double mu_minus = 0.1;
  double noise_sigma = 0.1;
  std::uint64_t seed = 0;
};

// Samples runs from `segments` (uniform choice, adjacent runs distinct when
// possible, lengths 1 + Geometric(1 / mean_run_length)) and emits posteriors
// for every feature of `features`: '+' features around mu_plus, '-' around
// mu_minus, unspecified around 0.5, each plus N(0, noise_sigma) and clamped
// to [0, 1]. The returned alignment is the ground truth; its score is 0.
// Throws UsageError on an empty segment list or invalid parameters.
std::pair<FeatureStream, Alignment> GenerateStream(const FeatureSystem& features,
                                                   const std::vector<Segment>& segments,
                                                   const StreamGenParams& params);

std::pair<FeatureStream, Alignment> GenerateStream(const TypologyDatabase& db,
                                                   const Inventory& inventory,
                                                   const StreamGenParams& params);

// `count` independent streams; stream i is seeded from (params.seed, i).
std::vector<std::pair<FeatureStream, Alignment>> GenerateStreams(
    const TypologyDatabase& db, const Inventory& inventory,
    const StreamGenParams& params, std::size_t count);

}  // namespace phontypo

#endif  // PHONTYPO_FEATURE_STREAM_H_
