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

#ifndef PHONTYPO_DELIMITED_H_
#define PHONTYPO_DELIMITED_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace phontypo {

// Minimal RFC 4180 reader: quoted fields may hold the delimiter, doubled
// quotes and line breaks. Accepts LF and CRLF record terminators and strips a
// leading UTF-8 BOM.
class DelimitedReader {
 public:
  DelimitedReader(std::string_view text, char delimiter = ',');

  // Reads the next record into `fields`. Returns false at end of input.
  // Throws ParseError on an unterminated quoted field.
  bool Next(std::vector<std::string>& fields);

  // 1-based line number at which the last returned record started.
  std::size_t line() const { return record_line_; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t record_line_ = 0;
  char delimiter_;
};

// Quotes a field only when it contains the delimiter, a quote or a line break.
std::string QuoteField(std::string_view field, char delimiter = ',');

void AppendRecord(std::string& out, const std::vector<std::string>& fields,
                  char delimiter = ',');

}  // namespace phontypo

#endif  // PHONTYPO_DELIMITED_H_
