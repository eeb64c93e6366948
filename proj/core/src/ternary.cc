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

#include "phontypo/ternary.h"

#include "phontypo/error.h"

namespace phontypo {

std::string_view TernarySymbol(Ternary t) {
  switch (t) {
    case Ternary::kPlus:
      return "+";
    case Ternary::kMinus:
      return "-";
    case Ternary::kUnspecified:
      return "0";
  }
  return "0";
}

bool TernaryValue::IsContour() const {
  return raw_token.find(',') != std::string::npos;
}

namespace {

bool ParseSimple(std::string_view token, Ternary& out) {
  if (token == "+") {
    out = Ternary::kPlus;
  } else if (token == "-") {
    out = Ternary::kMinus;
  } else if (token == "0" || token.empty()) {
    out = Ternary::kUnspecified;
  } else {
    return false;
  }
  return true;
}

}  // namespace

TernaryValue ParseTernaryToken(std::string_view token, ContourPolicy policy) {
  TernaryValue result;
  result.raw_token = std::string(token);
  const auto comma = token.find(',');
  if (comma == std::string_view::npos) {
    if (!ParseSimple(token, result.value)) {
      throw ParseError("invalid feature token '" + std::string(token) + "'");
    }
    return result;
  }
  // Validate every component, keep the first.
  Ternary first = Ternary::kUnspecified;
  std::size_t start = 0;
  bool is_first = true;
  while (true) {
    const auto end = token.find(',', start);
    const auto part = token.substr(start, end == std::string_view::npos
                                              ? std::string_view::npos
                                              : end - start);
    Ternary t;
    if (part.empty() || !ParseSimple(part, t)) {
      throw ParseError("invalid contour feature token '" + std::string(token) +
                       "'");
    }
    if (is_first) first = t;
    is_first = false;
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  result.value =
      policy == ContourPolicy::kFirstComponent ? first : Ternary::kUnspecified;
  return result;
}

Ternary ParseTernarySymbol(std::string_view symbol) {
  if (symbol == "+" || symbol == "plus") return Ternary::kPlus;
  if (symbol == "-" || symbol == "minus") return Ternary::kMinus;
  if (symbol == "0" || symbol == "unspecified") return Ternary::kUnspecified;
  throw ParseError("invalid ternary symbol '" + std::string(symbol) + "'");
}

}  // namespace phontypo
