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

#include "phontypo/realization.h"

#include <cmath>

#include "phontypo/error.h"
#include "phontypo/rng.h"

namespace phontypo {

void ValidateRealization(const RealizationParams& params) {
  if (params.dim < 1) throw UsageError("realization dim must be >= 1");
  if (!(params.noise_sigma >= 0.0)) {
    throw UsageError("realization noise_sigma must be >= 0");
  }
}

SyntheticRealizer::SyntheticRealizer(const FeatureSystem& features,
                                     RealizationParams params)
    : width_(features.size()), params_(std::move(params)) {
  ValidateRealization(params_);
  const auto dim = static_cast<std::size_t>(params_.dim);
  const double scale = 1.0 / std::sqrt(static_cast<double>(dim));

  auto engine = StreamKey(params_.seed).Add("projection").Engine();
  std::normal_distribution<double> normal(0.0, 1.0);
  projection_.resize(width_ * dim);
  for (double& x : projection_) x = normal(engine) * scale;

  for (const auto& [family, shift] : params_.family_shift) {
    ResolvedShift resolved;
    for (const auto& name : shift.flip_features) {
      resolved.flips.push_back(features.IndexOf(name));
    }
    resolved.offset.assign(dim, 0.0);
    if (shift.offset_scale != 0.0) {
      auto fam_engine = StreamKey(params_.seed).Add("family").Add(family).Engine();
      double norm = 0.0;
      for (double& x : resolved.offset) {
        x = normal(fam_engine);
        norm += x * x;
      }
      norm = std::sqrt(norm);
      for (double& x : resolved.offset) x *= shift.offset_scale / norm;
    }
    shifts_.emplace(family, std::move(resolved));
  }
}

std::span<const double> SyntheticRealizer::ProjectionColumn(
    std::size_t feature_index) const {
  const auto dim = static_cast<std::size_t>(params_.dim);
  return std::span<const double>(projection_).subspan(feature_index * dim, dim);
}

const SyntheticRealizer::ResolvedShift* SyntheticRealizer::ShiftFor(
    std::string_view family) const {
  auto it = shifts_.find(family);
  return it == shifts_.end() ? nullptr : &it->second;
}

std::vector<double> SyntheticRealizer::Realize(const Segment& segment,
                                               std::string_view family,
                                               std::uint64_t draw_index) const {
  if (segment.features.size() != width_) {
    throw DimensionError("segment '" + segment.glyph + "' has " +
                         std::to_string(segment.features.size()) +
                         " features, realizer expects " + std::to_string(width_));
  }
  const auto dim = static_cast<std::size_t>(params_.dim);
  const ResolvedShift* shift = ShiftFor(family);

  std::vector<double> out(dim, 0.0);
  for (std::size_t j = 0; j < width_; ++j) {
    double sign = TernarySign(segment.features.value(j));
    if (sign == 0.0) continue;
    if (shift) {
      for (std::size_t f : shift->flips) {
        if (f == j) sign = -sign;
      }
    }
    const auto column = ProjectionColumn(j);
    for (std::size_t k = 0; k < dim; ++k) out[k] += sign * column[k];
  }
  if (shift) {
    for (std::size_t k = 0; k < dim; ++k) out[k] += shift->offset[k];
  }
  if (params_.noise_sigma > 0.0) {
    auto engine = StreamKey(params_.seed)
                      .Add("noise")
                      .Add(segment.glyph)
                      .Add(family)
                      .Add(draw_index)
                      .Engine();
    std::normal_distribution<double> normal(0.0, params_.noise_sigma);
    for (double& x : out) x += normal(engine);
  }
  return out;
}

std::vector<double> SynthRealization(const FeatureSystem& features,
                                     const Segment& segment,
                                     std::string_view family,
                                     const RealizationParams& params,
                                     std::uint64_t draw_index) {
  return SyntheticRealizer(features, params).Realize(segment, family, draw_index);
}

}  // namespace phontypo
