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

#ifndef PHONTYPO_TERNARY_H_
#define PHONTYPO_TERNARY_H_

#include <cstdint>
#include <string>
#include <string_view>

namespace phontypo {

enum class Ternary : std::uint8_t { kMinus = 0, kUnspecified = 1, kPlus = 2 };

// "+", "-" or "0".
std::string_view TernarySymbol(Ternary t);

// +1 / -1 / 0 encoding used for classifier inputs and projections.
inline double TernarySign(Ternary t) {
  return t == Ternary::kPlus ? 1.0 : (t == Ternary::kMinus ? -1.0 : 0.0);
}

inline bool IsSpecified(Ternary t) { return t != Ternary::kUnspecified; }

// How contour tokens such as "+,-" collapse to a single ternary value.
enum class ContourPolicy { kFirstComponent, kUnspecified };

struct TernaryValue {
  Ternary value = Ternary::kUnspecified;
  // Token exactly as read; kept for reporting and re-serialization.
  std::string raw_token = "0";

  bool IsContour() const;

  friend bool operator==(const TernaryValue&, const TernaryValue&) = default;
};

// Accepts "+", "-", "0", "" (unspecified) and contours of those joined by
// ','. Anything else raises ParseError.
TernaryValue ParseTernaryToken(std::string_view token,
                               ContourPolicy policy = ContourPolicy::kFirstComponent);

// Parses a bare symbol ("+", "-", "0", also "plus"/"minus"/"unspecified").
Ternary ParseTernarySymbol(std::string_view symbol);

inline TernaryValue MakeTernary(Ternary t) {
  return TernaryValue{t, std::string(TernarySymbol(t))};
}

}  // namespace phontypo

#endif  // PHONTYPO_TERNARY_H_
