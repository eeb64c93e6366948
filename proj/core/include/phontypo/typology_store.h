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

#ifndef PHONTYPO_TYPOLOGY_STORE_H_
#define PHONTYPO_TYPOLOGY_STORE_H_

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "phontypo/ternary.h"

namespace phontypo {

// Ordered, unique distinctive-feature names.
class FeatureSystem {
 public:
  FeatureSystem() = default;
  // Throws ParseError on empty or duplicate names.
  explicit FeatureSystem(std::vector<std::string> names);

  const std::vector<std::string>& names() const { return names_; }
  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_[i]; }

  std::optional<std::size_t> Find(std::string_view name) const;
  // Throws NotFoundError naming the feature.
  std::size_t IndexOf(std::string_view name) const;

  friend bool operator==(const FeatureSystem& a, const FeatureSystem& b) {
    return a.names_ == b.names_;
  }

 private:
  std::vector<std::string> names_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

class FeatureVector {
 public:
  FeatureVector() = default;
  explicit FeatureVector(std::vector<TernaryValue> values)
      : values_(std::move(values)) {}

  std::size_t size() const { return values_.size(); }
  const TernaryValue& operator[](std::size_t i) const { return values_[i]; }
  Ternary value(std::size_t i) const { return values_[i].value; }
  const std::vector<TernaryValue>& values() const { return values_; }

  // Compact "+-0" rendering, one symbol per feature.
  std::string ToSymbols() const;

  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;

 private:
  std::vector<TernaryValue> values_;
};

// Builds a vector from a "+-0" symbol string.
FeatureVector FeatureVectorFromSymbols(std::string_view symbols);

enum class SegmentClass { kConsonant, kVowel, kTone, kUnknown };

std::string_view SegmentClassName(SegmentClass c);
SegmentClass ParseSegmentClass(std::string_view text);

struct Segment {
  std::string glyph;  // NFD
  SegmentClass segment_class = SegmentClass::kUnknown;
  FeatureVector features;

  friend bool operator==(const Segment&, const Segment&) = default;
};

// Numeric ids sort numerically ("380" < "1675"); everything else sorts after
// them, lexicographically.
struct InventoryIdLess {
  using is_transparent = void;
  bool operator()(std::string_view a, std::string_view b) const;
};

struct Inventory {
  std::string inventory_id;
  std::string language_name;
  std::string language_code;
  std::string glottocode;
  std::string source;
  std::string family;
  // Sorted, unique, normalized.
  std::vector<std::string> glyphs;
  // Only populated in per-inventory conflict mode: vectors that differ from
  // the database-wide segment table.
  std::map<std::string, FeatureVector, std::less<>> local_features;

  std::size_t size() const { return glyphs.size(); }
  bool Contains(std::string_view normalized_glyph) const;

  friend bool operator==(const Inventory&, const Inventory&) = default;
};

enum class ConflictPolicy { kError, kPerInventory };

struct ParseStats {
  std::size_t rows = 0;
  std::size_t duplicate_rows = 0;
  std::size_t contour_tokens = 0;
  // Glyphs whose vector disagreed across inventories (per-inventory mode).
  std::size_t conflicts = 0;
};

// Immutable after construction; safe for concurrent reads.
class TypologyDatabase {
 public:
  using SegmentTable = std::map<std::string, Segment, std::less<>>;
  using InventoryTable = std::map<std::string, Inventory, InventoryIdLess>;
  using LanguageIndex =
      std::map<std::string, std::vector<std::string>, std::less<>>;

  TypologyDatabase() = default;

  // Validates segment/inventory consistency and derives the language index
  // and attestation counts. Throws ParseError when an inventory is empty,
  // references a glyph missing from `segments`, or a vector length differs
  // from the feature system.
  static TypologyDatabase FromParts(FeatureSystem features,
                                    std::vector<Segment> segments,
                                    std::vector<Inventory> inventories,
                                    ParseStats stats = {});

  const FeatureSystem& feature_system() const { return features_; }
  const SegmentTable& segments() const { return segments_; }
  const InventoryTable& inventories() const { return inventories_; }
  // Keyed by language name as written in the source.
  const LanguageIndex& by_language() const { return by_language_; }
  const std::map<std::string, int, std::less<>>& attestation() const {
    return attestation_;
  }
  const ParseStats& stats() const { return stats_; }

  // Lookups normalize their argument.
  const Segment* FindSegment(std::string_view glyph) const;
  int Attestation(std::string_view glyph) const;
  const Inventory* FindInventory(std::string_view inventory_id) const;
  // Throws NotFoundError.
  const Inventory& GetInventory(std::string_view inventory_id) const;

  // Segments of `inventory`, ordered by glyph, with any per-inventory vectors
  // applied.
  std::vector<Segment> SegmentsOf(const Inventory& inventory) const;

  friend bool operator==(const TypologyDatabase& a,
                         const TypologyDatabase& b) {
    return a.features_ == b.features_ && a.segments_ == b.segments_ &&
           a.inventories_ == b.inventories_;
  }

 private:
  FeatureSystem features_;
  SegmentTable segments_;
  InventoryTable inventories_;
  LanguageIndex by_language_;
  std::map<std::string, int, std::less<>> attestation_;
  ParseStats stats_;
};

// Column roles for delimited input. Columns that are neither a role nor in
// `ignored` become feature columns, unless `features` lists them explicitly.
struct ColumnMap {
  std::string inventory_id = "InventoryID";
  std::string language_name = "LanguageName";
  std::string language_code = "ISO6393";
  std::string glottocode = "Glottocode";
  std::string source = "Source";
  std::string family = "Family";
  std::string glyph = "Phoneme";
  std::string segment_class = "SegmentClass";
  std::vector<std::string> ignored = {"GlyphID", "SpecificDialect",
                                      "Allophones", "Marginal"};
  std::vector<std::string> features;
  char delimiter = ',';
  ContourPolicy contour_policy = ContourPolicy::kFirstComponent;
  ConflictPolicy conflict_policy = ConflictPolicy::kError;

  // Overrides defaults from `key=value` lines ('#' starts a comment). List
  // values are comma separated. Throws ParseError on unknown keys.
  static ColumnMap FromConfigText(std::string_view text);
};

// Parses PHOIBLE-style long-format text: one row per (inventory, segment).
TypologyDatabase ParsePhoible(std::string_view text,
                              const ColumnMap& columns = {});

// Canonical re-serialization, readable by ParsePhoible with the default
// ColumnMap (and the same conflict policy). Rows are ordered by inventory id,
// then glyph; raw tokens are written verbatim.
std::string SerializeCanonical(const TypologyDatabase& db);

// Throws NotFoundError carrying the normalized glyph.
const FeatureVector& GetFeatureVector(const TypologyDatabase& db,
                                      std::string_view glyph);

enum class DistancePolicy { kSpecifiedOnly, kPenalizeMismatchToUnspecified };

// Throws DimensionError on length mismatch.
double FeatureDistance(const FeatureVector& a, const FeatureVector& b,
                       DistancePolicy policy = DistancePolicy::kSpecifiedOnly);

struct FeatureConstraint {
  std::string feature;
  Ternary value = Ternary::kUnspecified;

  friend bool operator==(const FeatureConstraint&,
                         const FeatureConstraint&) = default;
};

// Exact matching: an unspecified constraint only matches unspecified values.
// Sorted by glyph. Throws NotFoundError for unknown features.
std::vector<const Segment*> SegmentsMatching(
    const TypologyDatabase& db, const std::vector<FeatureConstraint>& constraints);

bool SegmentMatches(const FeatureSystem& features, const FeatureVector& vector,
                    const std::vector<FeatureConstraint>& constraints);

// Case-insensitive exact match on language name or code, ordered by
// inventory id.
std::vector<const Inventory*> InventoriesForLanguage(const TypologyDatabase& db,
                                                     std::string_view query);

}  // namespace phontypo

#endif  // PHONTYPO_TYPOLOGY_STORE_H_
