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

#ifndef PHONTYPO_TESTS_SUPPORT_FIXTURES_H_
#define PHONTYPO_TESTS_SUPPORT_FIXTURES_H_

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "phontypo/feature_stream.h"
#include "phontypo/file_util.h"
#include "phontypo/inventory_induction.h"
#include "phontypo/typology_store.h"

namespace phontypo::testing {

inline std::string DataPath(const std::string& name) {
  return std::string(PHONTYPO_TEST_DATA_DIR) + "/" + name;
}

inline const TypologyDatabase& SampleDb() {
  static const TypologyDatabase db =
      ParsePhoible(ReadFile(DataPath("phoible_sample.csv")), ColumnMap{});
  return db;
}

struct FixtureRow {
  std::string inventory_id;
  std::string language;
  std::string glyph;
  std::string segment_class;
  std::string symbols;  // one of +-0 per feature
  std::string family;
};

inline std::string FixtureCsv(const std::vector<std::string>& features,
                              const std::vector<FixtureRow>& rows) {
  std::string out = "InventoryID,LanguageName,Family,Phoneme,SegmentClass";
  for (const auto& f : features) out += "," + f;
  out += "\n";
  for (const auto& r : rows) {
    out += r.inventory_id + "," + r.language + "," + r.family + "," + r.glyph + "," +
           r.segment_class;
    for (char c : r.symbols) {
      out += ",";
      out += c;
    }
    out += "\n";
  }
  return out;
}

inline TypologyDatabase FixtureDb(const std::vector<std::string>& features,
                                  const std::vector<FixtureRow>& rows) {
  return ParsePhoible(FixtureCsv(features, rows), ColumnMap{});
}

inline FeatureVector RandomVector(std::mt19937_64& rng, std::size_t n, bool allow_unspecified) {
  std::uniform_int_distribution<int> pick(0, allow_unspecified ? 2 : 1);
  std::vector<TernaryValue> values;
  for (std::size_t i = 0; i < n; ++i) {
    const int v = pick(rng);
    values.push_back(MakeTernary(v == 0 ? Ternary::kMinus
                                        : v == 1 ? Ternary::kPlus : Ternary::kUnspecified));
  }
  return FeatureVector(std::move(values));
}

// Three 6-frame streams from 3 planted segments over an 8-glyph pool drawn
// from the sample database; small enough to score every subset.
struct SmallFixture {
  std::vector<FeatureStream> streams;
  CandidatePool pool;
};

inline SmallFixture MakeSmallFixture(std::uint64_t seed) {
  const auto& db = SampleDb();
  std::mt19937_64 rng(seed);
  std::vector<std::string> glyphs;
  for (const auto& [g, s] : db.segments()) glyphs.push_back(g);
  std::shuffle(glyphs.begin(), glyphs.end(), rng);
  SmallFixture f;
  std::vector<Segment> planted;
  for (std::size_t i = 0; i < 8; ++i) {
    f.pool.entries[glyphs[i]] = 1.0;
    if (i < 3) planted.push_back(*db.FindSegment(glyphs[i]));
  }
  StreamGenParams gen;
  gen.n_frames = 6;
  gen.mean_run_length = 2;
  for (std::uint64_t i = 0; i < 3; ++i) {
    gen.seed = seed * 100 + i;
    f.streams.push_back(GenerateStream(db.feature_system(), planted, gen).first);
  }
  return f;
}

}  // namespace phontypo::testing

#endif  // PHONTYPO_TESTS_SUPPORT_FIXTURES_H_
