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

#include "phontypo/feature_stream.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <random>
#include <set>

#include "phontypo/error.h"
#include "phontypo/rng.h"

namespace phontypo {

void ValidateStream(const FeatureStream& stream) {
  if (!(stream.frame_period > 0.0)) throw ParseError("frame period must be > 0");
  std::set<std::string_view> seen;
  for (const auto& name : stream.feature_names) {
    if (name.empty() || !seen.insert(name).second) {
      throw ParseError("empty or duplicate stream feature name '" + name + "'");
    }
  }
  for (std::size_t t = 0; t < stream.frames.size(); ++t) {
    const auto& p = stream.frames[t].posteriors;
    if (p.size() != stream.feature_names.size()) {
      throw ParseError("frame " + std::to_string(t) + " has " +
                       std::to_string(p.size()) + " posteriors, expected " +
                       std::to_string(stream.feature_names.size()));
    }
    for (double v : p) {
      if (!(v >= 0.0 && v <= 1.0)) {
        throw ParseError("frame " + std::to_string(t) + " has posterior outside [0,1]");
      }
    }
  }
}

namespace {

void AppendDouble(std::string& out, double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  out.append(buf, res.ptr);
}

double ParseDouble(std::string_view s, std::size_t line) {
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw ParseError("line " + std::to_string(line) + ": invalid number '" +
                     std::string(s) + "'");
  }
  return v;
}

std::vector<std::string_view> SplitTabs(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto tab = line.find('\t', start);
    out.push_back(line.substr(start, tab == std::string_view::npos
                                         ? std::string_view::npos
                                         : tab - start));
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  return out;
}

}  // namespace

std::string WriteStreamTsv(const FeatureStream& stream) {
  ValidateStream(stream);
  std::string out = "time";
  for (const auto& name : stream.feature_names) {
    out.push_back('\t');
    out += name;
  }
  out.push_back('\n');
  for (std::size_t t = 0; t < stream.frames.size(); ++t) {
    AppendDouble(out, static_cast<double>(t) * stream.frame_period);
    for (double p : stream.frames[t].posteriors) {
      out.push_back('\t');
      AppendDouble(out, p);
    }
    out.push_back('\n');
  }
  return out;
}

FeatureStream ReadStreamTsv(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    auto nl = text.find('\n', start);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(start, nl - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = nl + 1;
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.empty()) throw ParseError("stream file is empty: no header");

  const auto header = SplitTabs(lines[0]);
  if (header[0] != "time") throw ParseError("stream header must start with 'time'");
  FeatureStream stream;
  for (std::size_t i = 1; i < header.size(); ++i) {
    stream.feature_names.emplace_back(header[i]);
  }
  std::vector<double> times;
  for (std::size_t l = 1; l < lines.size(); ++l) {
    const auto cells = SplitTabs(lines[l]);
    if (cells.size() != header.size()) {
      throw ParseError("line " + std::to_string(l + 1) + ": expected " +
                       std::to_string(header.size()) + " columns, found " +
                       std::to_string(cells.size()));
    }
    const double time = ParseDouble(cells[0], l + 1);
    if (!times.empty() && !(time > times.back())) {
      throw ParseError("line " + std::to_string(l + 1) + ": time stamps must increase");
    }
    times.push_back(time);
    FeatureFrame frame;
    frame.posteriors.reserve(cells.size() - 1);
    for (std::size_t c = 1; c < cells.size(); ++c) {
      frame.posteriors.push_back(ParseDouble(cells[c], l + 1));
    }
    stream.frames.push_back(std::move(frame));
  }
  if (times.size() >= 2) stream.frame_period = times[1] - times[0];
  ValidateStream(stream);
  return stream;
}

std::vector<std::string> Alignment::Labels() const {
  std::vector<std::string> labels;
  for (const auto& run : runs) {
    for (std::size_t t = run.start_frame; t <= run.end_frame; ++t) {
      labels.push_back(run.glyph);
    }
  }
  return labels;
}

bool TilesFrames(const Alignment& alignment, std::size_t frames) {
  std::size_t next = 0;
  for (std::size_t i = 0; i < alignment.runs.size(); ++i) {
    const auto& run = alignment.runs[i];
    if (run.start_frame != next || run.end_frame < run.start_frame) return false;
    if (i > 0 && alignment.runs[i - 1].glyph == run.glyph) return false;
    next = run.end_frame + 1;
  }
  return next == frames;
}

std::pair<FeatureStream, Alignment> GenerateStream(const FeatureSystem& features,
                                                   const std::vector<Segment>& segments,
                                                   const StreamGenParams& params) {
  if (segments.empty()) throw UsageError("cannot generate a stream from an empty inventory");
  if (!(params.mu_plus > 0.0 && params.mu_plus < 1.0) ||
      !(params.mu_minus > 0.0 && params.mu_minus < 1.0)) {
    throw UsageError("mu_plus and mu_minus must lie in (0, 1)");
  }
  if (!(params.mean_run_length >= 1.0)) throw UsageError("mean_run_length must be >= 1");
  if (!(params.noise_sigma >= 0.0)) throw UsageError("noise_sigma must be >= 0");
  for (const auto& seg : segments) {
    if (seg.features.size() != features.size()) {
      throw DimensionError("segment '" + seg.glyph + "' does not match the feature system");
    }
  }

  FeatureStream stream;
  stream.feature_names = features.names();
  Alignment truth;

  auto run_engine = StreamKey(params.seed).Add("runs").Engine();
  auto noise_engine = StreamKey(params.seed).Add("posteriors").Engine();
  std::geometric_distribution<std::size_t> extra(1.0 / params.mean_run_length);
  std::normal_distribution<double> noise(0.0, params.noise_sigma > 0 ? params.noise_sigma : 1.0);

  std::size_t t = 0;
  std::size_t previous = segments.size();
  while (t < params.n_frames) {
    std::size_t pick;
    if (previous == segments.size() || segments.size() == 1) {
      pick = std::uniform_int_distribution<std::size_t>(0, segments.size() - 1)(run_engine);
    } else {
      pick = std::uniform_int_distribution<std::size_t>(0, segments.size() - 2)(run_engine);
      if (pick >= previous) ++pick;
    }
    const std::size_t length =
        std::min<std::size_t>(1 + extra(run_engine), params.n_frames - t);
    if (previous == pick) {
      truth.runs.back().end_frame += length;  // single-segment inventories
    } else {
      truth.runs.push_back(AlignmentRun{segments[pick].glyph, t, t + length - 1});
    }
    const Segment& seg = segments[pick];
    for (std::size_t i = 0; i < length; ++i) {
      FeatureFrame frame;
      frame.posteriors.reserve(features.size());
      for (std::size_t f = 0; f < features.size(); ++f) {
        const Ternary v = seg.features.value(f);
        double p = v == Ternary::kPlus ? params.mu_plus
                   : v == Ternary::kMinus ? params.mu_minus
                                          : 0.5;
        if (params.noise_sigma > 0.0) p += noise(noise_engine);
        frame.posteriors.push_back(std::clamp(p, 0.0, 1.0));
      }
      stream.frames.push_back(std::move(frame));
    }
    t += length;
    previous = pick;
  }
  return {std::move(stream), std::move(truth)};
}

std::pair<FeatureStream, Alignment> GenerateStream(const TypologyDatabase& db,
                                                   const Inventory& inventory,
                                                   const StreamGenParams& params) {
  return GenerateStream(db.feature_system(), db.SegmentsOf(inventory), params);
}

std::vector<std::pair<FeatureStream, Alignment>> GenerateStreams(
    const TypologyDatabase& db, const Inventory& inventory,
    const StreamGenParams& params, std::size_t count) {
  const std::vector<Segment> segments = db.SegmentsOf(inventory);
  std::vector<std::pair<FeatureStream, Alignment>> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    StreamGenParams p = params;
    p.seed = StreamKey(params.seed).Add("stream").Add(i).value();
    out.push_back(GenerateStream(db.feature_system(), segments, p));
  }
  return out;
}

}  // namespace phontypo
