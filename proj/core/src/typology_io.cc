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
#include <set>
#include <sstream>

#include "phontypo/delimited.h"
#include "phontypo/error.h"
#include "phontypo/typology_store.h"
#include "phontypo/unicode.h"

namespace phontypo {

namespace {

std::string Trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> SplitList(std::string_view s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const auto end = s.find(',', start);
    std::string item = Trim(s.substr(start, end == std::string_view::npos
                                                ? std::string_view::npos
                                                : end - start));
    if (!item.empty()) out.push_back(std::move(item));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return out;
}

char ParseDelimiter(const std::string& v) {
  if (v == "\\t" || v == "tab" || v == "\t") return '\t';
  if (v == "comma") return ',';
  if (v == "semicolon") return ';';
  if (v.size() == 1) return v[0];
  throw ParseError("invalid delimiter '" + v + "'");
}

}  // namespace

ColumnMap ColumnMap::FromConfigText(std::string_view text) {
  ColumnMap map;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (Trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ParseError("column map line " + std::to_string(line_no) +
                       ": expected key=value");
    }
    const std::string key = Trim(std::string_view(line).substr(0, eq));
    std::string value = Trim(std::string_view(line).substr(eq + 1));
    if (key == "delimiter" && value.empty()) {
      // A bare whitespace delimiter, e.g. "delimiter= ".
      value = line.substr(eq + 1);
      if (value.size() > 1) value.erase(0, 1);
    }
    if (key == "inventory_id") {
      map.inventory_id = value;
    } else if (key == "language_name") {
      map.language_name = value;
    } else if (key == "language_code") {
      map.language_code = value;
    } else if (key == "glottocode") {
      map.glottocode = value;
    } else if (key == "source") {
      map.source = value;
    } else if (key == "family") {
      map.family = value;
    } else if (key == "glyph") {
      map.glyph = value;
    } else if (key == "segment_class") {
      map.segment_class = value;
    } else if (key == "ignore") {
      map.ignored = SplitList(value);
    } else if (key == "features") {
      map.features = SplitList(value);
    } else if (key == "delimiter") {
      map.delimiter = ParseDelimiter(value);
    } else if (key == "contour_policy") {
      if (value == "first") {
        map.contour_policy = ContourPolicy::kFirstComponent;
      } else if (value == "unspecified") {
        map.contour_policy = ContourPolicy::kUnspecified;
      } else {
        throw ParseError("contour_policy must be 'first' or 'unspecified'");
      }
    } else if (key == "conflict_policy") {
      if (value == "error") {
        map.conflict_policy = ConflictPolicy::kError;
      } else if (value == "per_inventory") {
        map.conflict_policy = ConflictPolicy::kPerInventory;
      } else {
        throw ParseError("conflict_policy must be 'error' or 'per_inventory'");
      }
    } else {
      throw ParseError("column map line " + std::to_string(line_no) +
                       ": unknown key '" + key + "'");
    }
  }
  return map;
}

namespace {

struct RowData {
  SegmentClass segment_class;
  FeatureVector features;
  std::size_t line;
};

struct PendingInventory {
  Inventory meta;
  std::map<std::string, RowData, std::less<>> rows;
};

std::optional<std::size_t> FindColumn(const std::vector<std::string>& header,
                                      const std::string& name) {
  if (name.empty()) return std::nullopt;
  auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) return std::nullopt;
  return static_cast<std::size_t>(it - header.begin());
}

std::string DescribeVector(const FeatureVector& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ' ';
    out += v[i].raw_token.empty() ? "0" : v[i].raw_token;
  }
  return out + "]";
}

void CheckMeta(const Inventory& have, const Inventory& row, std::size_t line) {
  auto mismatch = [&](const char* what) {
    throw ParseError("line " + std::to_string(line) + ": inventory '" +
                     have.inventory_id + "' has inconsistent " + what);
  };
  if (have.language_name != row.language_name) mismatch("language name");
  if (have.language_code != row.language_code) mismatch("language code");
  if (have.source != row.source) mismatch("source");
}

}  // namespace

TypologyDatabase ParsePhoible(std::string_view text, const ColumnMap& columns) {
  if (text.find_first_not_of(" \t\r\n") == std::string_view::npos) {
    throw ParseError("empty input: no header row");
  }
  DelimitedReader reader(text, columns.delimiter);
  std::vector<std::string> header;
  reader.Next(header);
  for (auto& h : header) h = Trim(h);

  auto require = [&](const std::string& name, const char* role) {
    auto idx = FindColumn(header, name);
    if (!idx) {
      throw ParseError("missing mandatory column '" + name + "' (" + role + ")");
    }
    return *idx;
  };
  const std::size_t col_id = require(columns.inventory_id, "inventory id");
  const std::size_t col_lang = require(columns.language_name, "language");
  const std::size_t col_glyph = require(columns.glyph, "glyph");
  const std::size_t col_class = require(columns.segment_class, "segment class");
  const auto col_code = FindColumn(header, columns.language_code);
  const auto col_glotto = FindColumn(header, columns.glottocode);
  const auto col_source = FindColumn(header, columns.source);
  const auto col_family = FindColumn(header, columns.family);

  std::vector<std::size_t> feature_cols;
  std::vector<std::string> feature_names;
  if (!columns.features.empty()) {
    for (const auto& f : columns.features) {
      feature_cols.push_back(require(f, "feature"));
      feature_names.push_back(f);
    }
  } else {
    std::set<std::size_t> taken = {col_id, col_lang, col_glyph, col_class};
    for (const auto& c : {col_code, col_glotto, col_source, col_family}) {
      if (c) taken.insert(*c);
    }
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (taken.count(i)) continue;
      if (std::find(columns.ignored.begin(), columns.ignored.end(), header[i]) !=
          columns.ignored.end()) {
        continue;
      }
      feature_cols.push_back(i);
      feature_names.push_back(header[i]);
    }
  }
  FeatureSystem system(feature_names);

  ParseStats stats;
  std::map<std::string, PendingInventory, InventoryIdLess> pending;
  std::vector<std::string> fields;
  while (reader.Next(fields)) {
    if (fields.size() == 1 && Trim(fields[0]).empty()) continue;
    const std::size_t line = reader.line();
    if (fields.size() != header.size()) {
      throw ParseError("line " + std::to_string(line) + ": expected " +
                       std::to_string(header.size()) + " fields, found " +
                       std::to_string(fields.size()));
    }
    ++stats.rows;
    Inventory meta;
    meta.inventory_id = Trim(fields[col_id]);
    meta.language_name = Trim(fields[col_lang]);
    if (col_code) meta.language_code = Trim(fields[*col_code]);
    if (col_glotto) meta.glottocode = Trim(fields[*col_glotto]);
    if (col_source) meta.source = Trim(fields[*col_source]);
    if (col_family) meta.family = Trim(fields[*col_family]);
    if (meta.inventory_id.empty()) {
      throw ParseError("line " + std::to_string(line) + ": empty inventory id");
    }
    const std::string glyph = NormalizeGlyph(Trim(fields[col_glyph]));
    if (glyph.empty()) {
      throw ParseError("line " + std::to_string(line) + ": empty glyph");
    }

    std::vector<TernaryValue> values;
    values.reserve(feature_cols.size());
    std::size_t contours = 0;
    for (std::size_t c : feature_cols) {
      try {
        values.push_back(ParseTernaryToken(Trim(fields[c]), columns.contour_policy));
      } catch (const ParseError& e) {
        throw ParseError("line " + std::to_string(line) + ", column '" +
                         header[c] + "': " + e.what());
      }
      if (values.back().IsContour()) ++contours;
    }
    RowData row{ParseSegmentClass(Trim(fields[col_class])),
                FeatureVector(std::move(values)), line};

    auto [it, inserted] = pending.try_emplace(meta.inventory_id);
    if (inserted) {
      it->second.meta = meta;
    } else {
      CheckMeta(it->second.meta, meta, line);
      if (it->second.meta.family.empty()) it->second.meta.family = meta.family;
    }
    auto& rows = it->second.rows;
    if (auto existing = rows.find(glyph); existing != rows.end()) {
      if (existing->second.features != row.features) {
        throw ConflictError("glyph '" + glyph + "' appears twice in inventory '" +
                            meta.inventory_id + "' with different vectors: " +
                            DescribeVector(existing->second.features) +
                            " (line " + std::to_string(existing->second.line) +
                            ") vs " + DescribeVector(row.features) + " (line " +
                            std::to_string(line) + ")");
      }
      ++stats.duplicate_rows;
      continue;
    }
    stats.contour_tokens += contours;
    rows.emplace(glyph, std::move(row));
  }
  if (pending.empty()) throw ParseError("input has a header but no data rows");

  // The segment table takes each glyph's vector from the first inventory (in
  // id order) that lists it, so the result does not depend on row order.
  std::map<std::string, std::pair<const RowData*, std::string>, std::less<>> first;
  std::set<std::string> conflicted;
  std::vector<Inventory> inventories;
  for (auto& [id, p] : pending) {
    Inventory inv = p.meta;
    for (const auto& [glyph, row] : p.rows) {
      inv.glyphs.push_back(glyph);
      auto [f, fresh] = first.try_emplace(glyph, &row, id);
      if (fresh || f->second.first->features == row.features) continue;
      if (columns.conflict_policy == ConflictPolicy::kError) {
        throw ConflictError(
            "glyph '" + glyph + "' has conflicting feature vectors: " +
            DescribeVector(f->second.first->features) + " in inventory '" +
            f->second.second + "' (line " +
            std::to_string(f->second.first->line) + ") vs " +
            DescribeVector(row.features) + " in inventory '" + id + "' (line " +
            std::to_string(row.line) + ")");
      }
      conflicted.insert(glyph);
      inv.local_features.emplace(glyph, row.features);
    }
    inventories.push_back(std::move(inv));
  }
  stats.conflicts = conflicted.size();

  std::vector<Segment> segments;
  segments.reserve(first.size());
  for (const auto& [glyph, entry] : first) {
    segments.push_back(
        Segment{glyph, entry.first->segment_class, entry.first->features});
  }
  return TypologyDatabase::FromParts(std::move(system), std::move(segments),
                                     std::move(inventories), stats);
}

std::string SerializeCanonical(const TypologyDatabase& db) {
  std::string out;
  std::vector<std::string> fields = {"InventoryID", "LanguageName", "ISO6393",
                                     "Glottocode",  "Source",       "Family",
                                     "Phoneme",     "SegmentClass"};
  for (const auto& f : db.feature_system().names()) fields.push_back(f);
  AppendRecord(out, fields);
  for (const auto& [id, inv] : db.inventories()) {
    for (const auto& seg : db.SegmentsOf(inv)) {
      fields = {inv.inventory_id, inv.language_name, inv.language_code,
                inv.glottocode,   inv.source,        inv.family,
                seg.glyph,        std::string(SegmentClassName(seg.segment_class))};
      for (const auto& v : seg.features.values()) fields.push_back(v.raw_token);
      AppendRecord(out, fields);
    }
  }
  return out;
}

}  // namespace phontypo
