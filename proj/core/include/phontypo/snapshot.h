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

#ifndef PHONTYPO_SNAPSHOT_H_
#define PHONTYPO_SNAPSHOT_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "phontypo/typology_store.h"

namespace phontypo {

// Binary snapshot of a parsed database, for fast reload. Little endian:
//
//   magic        8 bytes "PHTYSNAP"
//   format       u32 kSnapshotFormat
//   tool         str  version of the tool that wrote it
//   stats        u64 rows, duplicate_rows, contour_tokens, conflicts
//   features     u32 n, str * n
//   segments     u32 n, per segment: str glyph, u8 class, vector
//   inventories  u32 n, per inventory: str id, name, code, glottocode,
//                source, family; u32 g, str glyph * g;
//                u32 l, (str glyph, vector) * l
//
//   str    = u32 byte length, bytes
//   vector = per feature: u8 ternary value, str raw token
//
// A snapshot written by a different tool version is rejected; re-run import.
inline constexpr std::uint32_t kSnapshotFormat = 1;

std::string EncodeSnapshot(const TypologyDatabase& db);

// Throws ParseError on bad magic, truncation or a version mismatch.
TypologyDatabase DecodeSnapshot(std::string_view bytes);

bool LooksLikeSnapshot(std::string_view bytes);

// Loads either a snapshot or delimited text, detected by content.
TypologyDatabase LoadDatabase(const std::filesystem::path& path,
                              const ColumnMap& columns = {});

}  // namespace phontypo

#endif  // PHONTYPO_SNAPSHOT_H_
