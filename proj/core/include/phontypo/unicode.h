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

#ifndef PHONTYPO_UNICODE_H_
#define PHONTYPO_UNICODE_H_

#include <string>
#include <string_view>

namespace phontypo {

// Canonical form used for every glyph key: Unicode NFD, the form used by the
// PHOIBLE releases. Invalid UTF-8 raises ParseError.
std::string NormalizeGlyph(std::string_view utf8);

// ASCII case folding; language names and codes are matched with this.
std::string AsciiLower(std::string_view s);

}  // namespace phontypo

#endif  // PHONTYPO_UNICODE_H_
