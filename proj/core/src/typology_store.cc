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

#include "phontypo/typology_store.h"

#include <algorithm>
#include <set>

#include "phontypo/error.h"
#include "phontypo/unicode.h"

namespace phontypo {

FeatureSystem::FeatureSystem(std::vector<std::string> names)
    : names_(std::move(names)) {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i].empty()) {
      throw ParseError("empty feature name at position " + std::to_string(i));
    }
    if (!index_.emplace(names_[i], i).second) {
      throw ParseError("duplicate feature name '" + names_[i] + "'");
    }
  }
}

std::optional<std::size_t> FeatureSystem::Find(std::string_view name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t FeatureSystem::IndexOf(std::string_view name) const {
  auto idx = Find(name);
  if (!idx) {
    throw NotFoundError("unknown feature '" + std::string(name) + "'",
                        std::string(name));
  }
  return *idx;
}

std::string FeatureVector::ToSymbols() const {
  std::string out;
  out.reserve(values_.size());
  for (const auto& v : values_) out += TernarySymbol(v.value);
  return out;
}

FeatureVector FeatureVectorFromSymbols(std::string_view symbols) {
  std::vector<TernaryValue> values;
  values.reserve(symbols.size());
  for (char c : symbols) {
    values.push_back(MakeTernary(ParseTernarySymbol(std::string_view(&c, 1))));
  }
  return FeatureVector(std::move(values));
}

std::string_view SegmentClassName(SegmentClass c) {
  switch (c) {
    case SegmentClass::kConsonant:
      return "consonant";
    case SegmentClass::kVowel:
      return "vowel";
    case SegmentClass::kTone:
      return "tone";
    case SegmentClass::kUnknown:
      return "unknown";
  }
  return "unknown";
}

SegmentClass ParseSegmentClass(std::string_view text) {
  const std::string lower = AsciiLower(text);
  if (lower == "consonant") return SegmentClass::kConsonant;
  if (lower == "vowel") return SegmentClass::kVowel;
  if (lower == "tone") return SegmentClass::kTone;
  return SegmentClass::kUnknown;
}

namespace {

bool IsDigits(std::string_view s) {
  return !s.empty() &&
         std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

std::string_view StripLeadingZeros(std::string_view s) {
  while (s.size() > 1 && s.front() == '0') s.remove_prefix(1);
  return s;
}

}  // namespace

bool InventoryIdLess::operator()(std::string_view a, std::string_view b) const {
  const bool da = IsDigits(a);
  const bool db = IsDigits(b);
  if (da != db) return da;
  if (da) {
    const auto sa = StripLeadingZeros(a);
    const auto sb = StripLeadingZeros(b);
    if (sa.size() != sb.size()) return sa.size() < sb.size();
    if (sa != sb) return sa < sb;
  }
  return a < b;
}

bool Inventory::Contains(std::string_view normalized_glyph) const {
  return std::binary_search(glyphs.begin(), glyphs.end(), normalized_glyph);
}

TypologyDatabase TypologyDatabase::FromParts(FeatureSystem features,
                                             std::vector<Segment> segments,
                                             std::vector<Inventory> inventories,
                                             ParseStats stats) {
  TypologyDatabase db;
  db.features_ = std::move(features);
  db.stats_ = stats;
  const std::size_t width = db.features_.size();
  for (auto& seg : segments) {
    if (seg.glyph.empty()) throw ParseError("segment with empty glyph");
    if (seg.features.size() != width) {
      throw ParseError("segment '" + seg.glyph + "' has " +
                       std::to_string(seg.features.size()) +
                       " feature values, expected " + std::to_string(width));
    }
    std::string key = seg.glyph;
    if (!db.segments_.emplace(std::move(key), std::move(seg)).second) {
      throw ParseError("duplicate segment glyph in segment table");
    }
  }
  for (auto& inv : inventories) {
    if (inv.inventory_id.empty()) throw ParseError("inventory with empty id");
    if (inv.glyphs.empty()) {
      throw ParseError("inventory '" + inv.inventory_id + "' has no segments");
    }
    std::sort(inv.glyphs.begin(), inv.glyphs.end());
    if (std::adjacent_find(inv.glyphs.begin(), inv.glyphs.end()) !=
        inv.glyphs.end()) {
      throw ParseError("inventory '" + inv.inventory_id +
                       "' lists a glyph twice");
    }
    for (const auto& g : inv.glyphs) {
      if (!db.segments_.count(g)) {
        throw ParseError("inventory '" + inv.inventory_id +
                         "' references unknown segment '" + g + "'");
      }
      ++db.attestation_[g];
    }
    for (const auto& [g, vec] : inv.local_features) {
      if (vec.size() != width || !inv.Contains(g)) {
        throw ParseError("inventory '" + inv.inventory_id +
                         "' has an invalid local vector for '" + g + "'");
      }
    }
    db.by_language_[inv.language_name].push_back(inv.inventory_id);
    std::string id = inv.inventory_id;
    if (!db.inventories_.emplace(std::move(id), std::move(inv)).second) {
      throw ParseError("duplicate inventory id");
    }
  }
  for (auto& [lang, ids] : db.by_language_) {
    std::sort(ids.begin(), ids.end(), InventoryIdLess{});
  }
  return db;
}

const Segment* TypologyDatabase::FindSegment(std::string_view glyph) const {
  auto it = segments_.find(NormalizeGlyph(glyph));
  return it == segments_.end() ? nullptr : &it->second;
}

int TypologyDatabase::Attestation(std::string_view glyph) const {
  auto it = attestation_.find(NormalizeGlyph(glyph));
  return it == attestation_.end() ? 0 : it->second;
}

const Inventory* TypologyDatabase::FindInventory(
    std::string_view inventory_id) const {
  auto it = inventories_.find(inventory_id);
  return it == inventories_.end() ? nullptr : &it->second;
}

const Inventory& TypologyDatabase::GetInventory(
    std::string_view inventory_id) const {
  const Inventory* inv = FindInventory(inventory_id);
  if (!inv) {
    throw NotFoundError("unknown inventory id '" + std::string(inventory_id) + "'",
                        std::string(inventory_id));
  }
  return *inv;
}

std::vector<Segment> TypologyDatabase::SegmentsOf(
    const Inventory& inventory) const {
  std::vector<Segment> out;
  out.reserve(inventory.glyphs.size());
  for (const auto& g : inventory.glyphs) {
    Segment seg = segments_.at(g);
    if (auto it = inventory.local_features.find(g);
        it != inventory.local_features.end()) {
      seg.features = it->second;
    }
    out.push_back(std::move(seg));
  }
  return out;
}

const FeatureVector& GetFeatureVector(const TypologyDatabase& db,
                                      std::string_view glyph) {
  std::string key = NormalizeGlyph(glyph);
  auto it = db.segments().find(key);
  if (it == db.segments().end()) {
    throw NotFoundError("unknown glyph '" + key + "'", key);
  }
  return it->second.features;
}

double FeatureDistance(const FeatureVector& a, const FeatureVector& b,
                       DistancePolicy policy) {
  if (a.size() != b.size()) {
    throw DimensionError("feature vectors differ in length: " +
                         std::to_string(a.size()) + " vs " +
                         std::to_string(b.size()));
  }
  double disagreement = 0.0;
  std::size_t denominator = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const bool sa = IsSpecified(a.value(i));
    const bool sb = IsSpecified(b.value(i));
    if (policy == DistancePolicy::kSpecifiedOnly) {
      if (sa && sb) {
        ++denominator;
        if (a.value(i) != b.value(i)) disagreement += 1.0;
      }
    } else if (sa || sb) {
      ++denominator;
      if (sa && sb) {
        if (a.value(i) != b.value(i)) disagreement += 1.0;
      } else {
        disagreement += 0.5;
      }
    }
  }
  return denominator == 0 ? 0.0 : disagreement / static_cast<double>(denominator);
}

bool SegmentMatches(const FeatureSystem& features, const FeatureVector& vector,
                    const std::vector<FeatureConstraint>& constraints) {
  for (const auto& c : constraints) {
    if (vector.value(features.IndexOf(c.feature)) != c.value) return false;
  }
  return true;
}

std::vector<const Segment*> SegmentsMatching(
    const TypologyDatabase& db,
    const std::vector<FeatureConstraint>& constraints) {
  const FeatureSystem& fs = db.feature_system();
  std::vector<std::pair<std::size_t, Ternary>> resolved;
  resolved.reserve(constraints.size());
  for (const auto& c : constraints) {
    resolved.emplace_back(fs.IndexOf(c.feature), c.value);
  }
  std::vector<const Segment*> out;
  for (const auto& [glyph, seg] : db.segments()) {
    bool ok = true;
    for (const auto& [idx, value] : resolved) {
      if (seg.features.value(idx) != value) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(&seg);
  }
  return out;
}

std::vector<const Inventory*> InventoriesForLanguage(const TypologyDatabase& db,
                                                     std::string_view query) {
  const std::string q = AsciiLower(query);
  std::vector<const Inventory*> out;
  if (q.empty()) return out;
  for (const auto& [id, inv] : db.inventories()) {
    if (AsciiLower(inv.language_name) == q ||
        (!inv.language_code.empty() && AsciiLower(inv.language_code) == q)) {
      out.push_back(&inv);
    }
  }
  return out;
}

}  // namespace phontypo
