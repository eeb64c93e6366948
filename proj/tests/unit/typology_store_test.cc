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
#include <map>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "fixtures.h"
#include "phontypo/delimited.h"
#include "phontypo/error.h"
#include "phontypo/snapshot.h"
#include "phontypo/ternary.h"
#include "phontypo/typology_store.h"
#include "phontypo/unicode.h"

namespace phontypo {
namespace {

using testing::FixtureDb;
using testing::FixtureRow;
using testing::SampleDb;

const std::vector<std::string> kPbmFeatures = {"voice", "sonorant", "labial"};

TypologyDatabase PbmDb() {
  return FixtureDb(kPbmFeatures, {{"1", "Aa", "p", "consonant", "--+", "F"},
                                  {"1", "Aa", "b", "consonant", "+-+", "F"},
                                  {"1", "Aa", "m", "consonant", "+++", "F"}});
}

TEST(TernaryTest, ParsesPlainTokens) {
  EXPECT_EQ(ParseTernaryToken("+").value, Ternary::kPlus);
  EXPECT_EQ(ParseTernaryToken("-").value, Ternary::kMinus);
  EXPECT_EQ(ParseTernaryToken("0").value, Ternary::kUnspecified);
  EXPECT_EQ(ParseTernaryToken("").value, Ternary::kUnspecified);
  EXPECT_THROW(ParseTernaryToken("x"), ParseError);
}

TEST(TernaryTest, ContourKeepsRawToken) {
  const TernaryValue v = ParseTernaryToken("+,-");
  EXPECT_EQ(v.value, Ternary::kPlus);
  EXPECT_EQ(v.raw_token, "+,-");
  EXPECT_TRUE(v.IsContour());
  EXPECT_EQ(ParseTernaryToken("-,+", ContourPolicy::kUnspecified).value,
            Ternary::kUnspecified);
}

TEST(DelimitedTest, HandlesQuotesCrlfAndBom) {
  DelimitedReader reader("\xEF\xBB\xBF" "a,\"b,c\",\"d\"\"e\"\r\n1,2,3\r\n");
  std::vector<std::string> fields;
  ASSERT_TRUE(reader.Next(fields));
  EXPECT_EQ(fields, (std::vector<std::string>{"a", "b,c", "d\"e"}));
  ASSERT_TRUE(reader.Next(fields));
  EXPECT_EQ(fields, (std::vector<std::string>{"1", "2", "3"}));
  EXPECT_FALSE(reader.Next(fields));
}

TEST(DelimitedTest, UnterminatedQuoteIsFatal) {
  DelimitedReader reader("a,\"b\n");
  std::vector<std::string> fields;
  EXPECT_THROW(reader.Next(fields), ParseError);
}

TEST(UnicodeTest, NormalizationIsIdempotentAndCanonical) {
  const std::string composed = "\xC3\xA3";        // a with tilde, precomposed
  const std::string decomposed = "a\xCC\x83";     // a + combining tilde
  EXPECT_EQ(NormalizeGlyph(composed), decomposed);
  EXPECT_EQ(NormalizeGlyph(NormalizeGlyph(composed)), NormalizeGlyph(composed));
  EXPECT_THROW(NormalizeGlyph("\xFF"), ParseError);
}

TEST(ParsePhoibleTest, SampleHasThreeJavaneseInventories) {
  const auto& db = SampleDb();
  ASSERT_TRUE(db.by_language().count("Javanese"));
  EXPECT_EQ(db.by_language().at("Javanese").size(), 3u);
}

TEST(ParsePhoibleTest, SingleRowAllUnspecified) {
  const auto db = FixtureDb({"f1", "f2", "f3"}, {{"7", "Solo", "a", "vowel", "000", ""}});
  EXPECT_EQ(db.inventories().size(), 1u);
  EXPECT_EQ(db.segments().size(), 1u);
  const FeatureVector& v = GetFeatureVector(db, "a");
  for (std::size_t i = 0; i < v.size(); ++i) EXPECT_EQ(v.value(i), Ternary::kUnspecified);
}

TEST(ParsePhoibleTest, SharedGlyphAttestationMatchesRowScan) {
  const std::vector<FixtureRow> rows = {
      {"1", "Aa", "p", "consonant", "--+", ""}, {"1", "Aa", "b", "consonant", "+-+", ""},
      {"1", "Aa", "a", "vowel", "++-", ""},     {"2", "Bb", "p", "consonant", "--+", ""},
      {"2", "Bb", "m", "consonant", "+++", ""}, {"2", "Bb", "i", "vowel", "++-", ""}};
  const auto db = FixtureDb(kPbmFeatures, rows);
  std::map<std::string, std::set<std::string>> scan;
  for (const auto& r : rows) scan[r.glyph].insert(r.inventory_id);
  EXPECT_EQ(db.segments().count("p"), 1u);
  for (const auto& [glyph, ids] : scan) {
    EXPECT_EQ(db.Attestation(glyph), static_cast<int>(ids.size())) << glyph;
  }
  EXPECT_EQ(db.Attestation("p"), 2);
}

TEST(ParsePhoibleTest, Errors) {
  EXPECT_THROW(ParsePhoible("", ColumnMap{}), ParseError);
  EXPECT_THROW(ParsePhoible("InventoryID,LanguageName,Phoneme,SegmentClass,f\n", ColumnMap{}),
               ParseError);
  try {
    ParsePhoible("InventoryID,LanguageName,SegmentClass,f\n1,A,vowel,+\n", ColumnMap{});
    FAIL() << "missing glyph column accepted";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("Phoneme"), std::string::npos);
  }
}

TEST(ParsePhoibleTest, ConflictingVectorsListBoth) {
  try {
    FixtureDb(kPbmFeatures, {{"1", "Aa", "p", "consonant", "--+", ""},
                             {"2", "Bb", "p", "consonant", "+-+", ""}});
    FAIL() << "conflict accepted";
  } catch (const ConflictError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("[- - +]"), std::string::npos);
    EXPECT_NE(msg.find("[+ - +]"), std::string::npos);
  }
}

TEST(ParsePhoibleTest, PerInventoryConflictMode) {
  ColumnMap columns;
  columns.conflict_policy = ConflictPolicy::kPerInventory;
  const auto db = ParsePhoible(testing::FixtureCsv(kPbmFeatures,
                                                   {{"1", "Aa", "p", "consonant", "--+", ""},
                                                    {"2", "Bb", "p", "consonant", "+-+", ""}}),
                               columns);
  EXPECT_EQ(db.stats().conflicts, 1u);
  EXPECT_EQ(GetFeatureVector(db, "p").ToSymbols(), "--+");
  EXPECT_EQ(db.SegmentsOf(db.GetInventory("2"))[0].features.ToSymbols(), "+-+");
}

TEST(ParsePhoibleTest, DuplicateRowsAreCounted) {
  const auto db = FixtureDb(kPbmFeatures, {{"1", "Aa", "p", "consonant", "--+", ""},
                                           {"1", "Aa", "p", "consonant", "--+", ""}});
  EXPECT_EQ(db.stats().duplicate_rows, 1u);
  EXPECT_EQ(db.GetInventory("1").size(), 1u);
}

TEST(ParsePhoibleTest, ColumnMapConfig) {
  const ColumnMap columns = ColumnMap::FromConfigText(
      "inventory_id = inv\nlanguage_name = lang\nglyph = seg\nsegment_class = cls\n"
      "delimiter = tab\n");
  const auto db = ParsePhoible("inv\tlang\tseg\tcls\tvoice\n1\tAa\tp\tconsonant\t-\n", columns);
  EXPECT_EQ(GetFeatureVector(db, "p").ToSymbols(), "-");
}

TEST(FeatureVectorTest, LookupAndNotFound) {
  const auto db = PbmDb();
  EXPECT_EQ(GetFeatureVector(db, "p").value(0), Ternary::kMinus);
  EXPECT_EQ(&GetFeatureVector(db, "p"), &GetFeatureVector(db, "p"));
  try {
    GetFeatureVector(db, "ʡ͡ʢ");
    FAIL();
  } catch (const NotFoundError& e) {
    EXPECT_EQ(e.key(), NormalizeGlyph("ʡ͡ʢ"));
  }
}

TEST(FeatureDistanceTest, HandCount) {
  EXPECT_DOUBLE_EQ(FeatureDistance(FeatureVectorFromSymbols("++0"),
                                   FeatureVectorFromSymbols("+-0")),
                   0.5);
  EXPECT_DOUBLE_EQ(FeatureDistance(FeatureVectorFromSymbols("+0"),
                                   FeatureVectorFromSymbols("0-")),
                   0.0);
  EXPECT_DOUBLE_EQ(FeatureDistance(FeatureVectorFromSymbols("++"), FeatureVectorFromSymbols("+0"),
                                   DistancePolicy::kPenalizeMismatchToUnspecified),
                   0.25);
  EXPECT_THROW(FeatureDistance(FeatureVectorFromSymbols("+"), FeatureVectorFromSymbols("++")),
               DimensionError);
}

TEST(FeatureDistanceTest, PropertiesOnRandomPairs) {
  std::mt19937_64 rng(20240611);
  for (int i = 0; i < 1000; ++i) {
    const auto a = testing::RandomVector(rng, 12, true);
    const auto b = testing::RandomVector(rng, 12, true);
    const auto full = testing::RandomVector(rng, 12, false);
    for (auto policy :
         {DistancePolicy::kSpecifiedOnly, DistancePolicy::kPenalizeMismatchToUnspecified}) {
      const double d = FeatureDistance(a, b, policy);
      EXPECT_EQ(d, FeatureDistance(b, a, policy));
      EXPECT_GE(d, 0.0);
      EXPECT_LE(d, 1.0);
      EXPECT_EQ(FeatureDistance(full, full, policy), 0.0);
    }
  }
}

TEST(SegmentsMatchingTest, Examples) {
  const auto db = PbmDb();
  EXPECT_EQ(SegmentsMatching(db, {}).size(), 3u);
  const auto hits =
      SegmentsMatching(db, {{"voice", Ternary::kPlus}, {"sonorant", Ternary::kMinus}});
  ASSERT_EQ(hits.size(), 1u);
  EXPECT_EQ(hits[0]->glyph, "b");
  EXPECT_THROW(SegmentsMatching(db, {{"nasal", Ternary::kPlus}}), NotFoundError);
}

TEST(SegmentsMatchingTest, MonotoneFiltering) {
  const auto& db = SampleDb();
  const auto& names = db.feature_system().names();
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::size_t> feature(0, names.size() - 1);
  std::uniform_int_distribution<int> value(0, 2);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<FeatureConstraint> c1, c2;
    for (int i = 0; i < 2; ++i) {
      c1.push_back({names[feature(rng)], static_cast<Ternary>(value(rng))});
      c2.push_back({names[feature(rng)], static_cast<Ternary>(value(rng))});
    }
    auto both = c1;
    both.insert(both.end(), c2.begin(), c2.end());
    const auto narrow = SegmentsMatching(db, both);
    const auto wide = SegmentsMatching(db, c1);
    for (const Segment* s : narrow) {
      EXPECT_NE(std::find(wide.begin(), wide.end(), s), wide.end());
    }
  }
}

TEST(InventoriesForLanguageTest, Examples) {
  const auto& db = SampleDb();
  const auto javanese = InventoriesForLanguage(db, "javanese");
  ASSERT_EQ(javanese.size(), 3u);
  EXPECT_EQ(javanese[0]->inventory_id, "380");
  EXPECT_EQ(javanese[1]->inventory_id, "1675");
  EXPECT_TRUE(InventoriesForLanguage(db, "Qqq").empty());
  EXPECT_EQ(InventoriesForLanguage(db, "jav").size(), 3u);
  const auto spanish = InventoriesForLanguage(db, "Spanish");
  ASSERT_EQ(spanish.size(), 2u);
  EXPECT_TRUE(InventoryIdLess{}(spanish[0]->inventory_id, spanish[1]->inventory_id));
}

TEST(TypologyDatabaseTest, AttestationMatchesBruteForce) {
  const auto& db = SampleDb();
  for (const auto& [glyph, seg] : db.segments()) {
    int count = 0;
    for (const auto& [id, inv] : db.inventories()) {
      count += std::count(inv.glyphs.begin(), inv.glyphs.end(), glyph) > 0 ? 1 : 0;
    }
    EXPECT_EQ(db.Attestation(glyph), count) << glyph;
  }
}

TEST(TypologyDatabaseTest, CanonicalRoundTrip) {
  const auto& db = SampleDb();
  const auto again = ParsePhoible(SerializeCanonical(db), ColumnMap{});
  EXPECT_EQ(again, db);
  EXPECT_EQ(SerializeCanonical(again), SerializeCanonical(db));
}

TEST(TypologyDatabaseTest, ContourRoundTripKeepsRawToken) {
  const std::string csv =
      "InventoryID,LanguageName,Phoneme,SegmentClass,f1,f2\n1,Aa,a,vowel,\"+,-\",-\n";
  const auto db = ParsePhoible(csv, ColumnMap{});
  EXPECT_EQ(db.stats().contour_tokens, 1u);
  EXPECT_EQ(GetFeatureVector(db, "a")[0].raw_token, "+,-");
  EXPECT_EQ(ParsePhoible(SerializeCanonical(db), ColumnMap{}), db);
}

TEST(SnapshotTest, RoundTripAndCorruption) {
  const auto& db = SampleDb();
  const std::string bytes = EncodeSnapshot(db);
  EXPECT_TRUE(LooksLikeSnapshot(bytes));
  EXPECT_EQ(DecodeSnapshot(bytes), db);
  EXPECT_THROW(DecodeSnapshot(bytes.substr(0, bytes.size() / 2)), ParseError);
  EXPECT_THROW(DecodeSnapshot(bytes + "x"), ParseError);
  std::string wrong_version = bytes;
  wrong_version[8] = static_cast<char>(kSnapshotFormat + 1);
  EXPECT_THROW(DecodeSnapshot(wrong_version), ParseError);
}

}  // namespace
}  // namespace phontypo
