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

#include "phontypo/snapshot.h"

#include <cstring>

#include "phontypo/error.h"
#include "phontypo/file_util.h"

namespace phontypo {

namespace {

constexpr std::string_view kMagic = "PHTYSNAP";

class Writer {
 public:
  void U8(std::uint8_t v) { out_.push_back(static_cast<char>(v)); }
  void U32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) U8(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void U64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) U8(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void Str(std::string_view s) {
    U32(static_cast<std::uint32_t>(s.size()));
    out_.append(s);
  }
  void Raw(std::string_view s) { out_.append(s); }
  void Vector(const FeatureVector& v) {
    for (const auto& t : v.values()) {
      U8(static_cast<std::uint8_t>(t.value));
      Str(t.raw_token);
    }
  }
  std::string Take() { return std::move(out_); }

 private:
  std::string out_;
};

class Reader {
 public:
  explicit Reader(std::string_view in) : in_(in) {}

  std::uint8_t U8() {
    Need(1);
    return static_cast<std::uint8_t>(in_[pos_++]);
  }
  std::uint32_t U32() {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(U8()) << (8 * i);
    return v;
  }
  std::uint64_t U64() {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(U8()) << (8 * i);
    return v;
  }
  std::string Str() {
    const std::uint32_t n = U32();
    Need(n);
    std::string s(in_.substr(pos_, n));
    pos_ += n;
    return s;
  }
  std::string_view Raw(std::size_t n) {
    Need(n);
    auto s = in_.substr(pos_, n);
    pos_ += n;
    return s;
  }
  FeatureVector Vector(std::size_t width) {
    std::vector<TernaryValue> values(width);
    for (auto& t : values) {
      const std::uint8_t raw = U8();
      if (raw > 2) throw ParseError("snapshot: invalid ternary value");
      t.value = static_cast<Ternary>(raw);
      t.raw_token = Str();
    }
    return FeatureVector(std::move(values));
  }
  // Guards allocation sizes against corrupt counts.
  std::uint32_t Count() {
    const std::uint32_t n = U32();
    if (n > in_.size() - pos_) throw ParseError("snapshot: corrupt count");
    return n;
  }
  bool AtEnd() const { return pos_ == in_.size(); }

 private:
  void Need(std::size_t n) const {
    if (in_.size() - pos_ < n) throw ParseError("snapshot: truncated input");
  }
  std::string_view in_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string EncodeSnapshot(const TypologyDatabase& db) {
  Writer w;
  w.Raw(kMagic);
  w.U32(kSnapshotFormat);
  w.Str(PHONTYPO_VERSION);
  const ParseStats& s = db.stats();
  w.U64(s.rows);
  w.U64(s.duplicate_rows);
  w.U64(s.contour_tokens);
  w.U64(s.conflicts);
  w.U32(static_cast<std::uint32_t>(db.feature_system().size()));
  for (const auto& name : db.feature_system().names()) w.Str(name);
  w.U32(static_cast<std::uint32_t>(db.segments().size()));
  for (const auto& [glyph, seg] : db.segments()) {
    w.Str(glyph);
    w.U8(static_cast<std::uint8_t>(seg.segment_class));
    w.Vector(seg.features);
  }
  w.U32(static_cast<std::uint32_t>(db.inventories().size()));
  for (const auto& [id, inv] : db.inventories()) {
    for (const std::string* field :
         {&inv.inventory_id, &inv.language_name, &inv.language_code,
          &inv.glottocode, &inv.source, &inv.family}) {
      w.Str(*field);
    }
    w.U32(static_cast<std::uint32_t>(inv.glyphs.size()));
    for (const auto& g : inv.glyphs) w.Str(g);
    w.U32(static_cast<std::uint32_t>(inv.local_features.size()));
    for (const auto& [g, v] : inv.local_features) {
      w.Str(g);
      w.Vector(v);
    }
  }
  return w.Take();
}

bool LooksLikeSnapshot(std::string_view bytes) {
  return bytes.substr(0, kMagic.size()) == kMagic;
}

TypologyDatabase DecodeSnapshot(std::string_view bytes) {
  if (!LooksLikeSnapshot(bytes)) throw ParseError("not a phontypo snapshot");
  Reader r(bytes);
  r.Raw(kMagic.size());
  const std::uint32_t format = r.U32();
  const std::string tool = r.Str();
  if (format != kSnapshotFormat || tool != PHONTYPO_VERSION) {
    throw ParseError("snapshot written by phontypo " + tool + " (format " +
                     std::to_string(format) + "); this is " + PHONTYPO_VERSION +
                     ", re-run import");
  }
  ParseStats stats;
  stats.rows = r.U64();
  stats.duplicate_rows = r.U64();
  stats.contour_tokens = r.U64();
  stats.conflicts = r.U64();
  std::vector<std::string> names(r.Count());
  for (auto& n : names) n = r.Str();
  FeatureSystem system(std::move(names));

  std::vector<Segment> segments(r.Count());
  for (auto& seg : segments) {
    seg.glyph = r.Str();
    const std::uint8_t cls = r.U8();
    if (cls > 3) throw ParseError("snapshot: invalid segment class");
    seg.segment_class = static_cast<SegmentClass>(cls);
    seg.features = r.Vector(system.size());
  }
  std::vector<Inventory> inventories(r.Count());
  for (auto& inv : inventories) {
    for (std::string* field : {&inv.inventory_id, &inv.language_name,
                               &inv.language_code, &inv.glottocode, &inv.source,
                               &inv.family}) {
      *field = r.Str();
    }
    inv.glyphs.resize(r.Count());
    for (auto& g : inv.glyphs) g = r.Str();
    const std::uint32_t locals = r.Count();
    for (std::uint32_t i = 0; i < locals; ++i) {
      std::string g = r.Str();
      inv.local_features.emplace(std::move(g), r.Vector(system.size()));
    }
  }
  if (!r.AtEnd()) throw ParseError("snapshot: trailing bytes");
  return TypologyDatabase::FromParts(std::move(system), std::move(segments),
                                     std::move(inventories), stats);
}

TypologyDatabase LoadDatabase(const std::filesystem::path& path,
                              const ColumnMap& columns) {
  const std::string bytes = ReadFile(path);
  if (LooksLikeSnapshot(bytes)) return DecodeSnapshot(bytes);
  return ParsePhoible(bytes, columns);
}

}  // namespace phontypo
