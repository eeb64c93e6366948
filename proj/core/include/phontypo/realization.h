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

#ifndef PHONTYPO_REALIZATION_H_
#define PHONTYPO_REALIZATION_H_

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "phontypo/typology_store.h"

namespace phontypo {

// Per-family distortion of the synthetic realization.
struct FamilyShift {
  // Features whose projected contribution changes sign for this family.
  std::vector<std::string> flip_features;
  // Length of a fixed, family-specific offset vector.
  double offset_scale = 0.0;
};

struct RealizationParams {
  int dim = 32;
  double noise_sigma = 0.1;
  std::map<std::string, FamilyShift, std::less<>> family_shift;
  std::uint64_t seed = 0;
};

// Throws UsageError if dim < 1 or noise_sigma < 0.
void ValidateRealization(const RealizationParams& params);

// Synthetic stand-in for an acoustic span: a fixed seeded random projection
// of the {+1,-1,0}-encoded feature vector, shifted per family, plus Gaussian
// noise from a stream keyed by (seed, glyph, family, draw index). Identical
// parameters give bit-identical outputs.
class SyntheticRealizer {
 public:
  SyntheticRealizer(const FeatureSystem& features, RealizationParams params);

  std::vector<double> Realize(const Segment& segment, std::string_view family,
                              std::uint64_t draw_index) const;

  // Embedding direction of feature `feature_index` (length dim).
  std::span<const double> ProjectionColumn(std::size_t feature_index) const;

  const RealizationParams& params() const { return params_; }

 private:
  struct ResolvedShift {
    std::vector<std::size_t> flips;
    std::vector<double> offset;
  };

  const ResolvedShift* ShiftFor(std::string_view family) const;

  std::size_t width_;
  RealizationParams params_;
  std::vector<double> projection_;  // column-major: width_ columns of dim
  std::map<std::string, ResolvedShift, std::less<>> shifts_;
};

// One-shot form; builds the projection on every call.
std::vector<double> SynthRealization(const FeatureSystem& features,
                                     const Segment& segment,
                                     std::string_view family,
                                     const RealizationParams& params,
                                     std::uint64_t draw_index);

}  // namespace phontypo

#endif  // PHONTYPO_REALIZATION_H_
