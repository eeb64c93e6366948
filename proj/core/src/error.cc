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

#include "phontypo/error.h"

namespace phontypo {

std::string_view ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kParse:
      return "parse";
    case ErrorKind::kConflict:
      return "conflict";
    case ErrorKind::kNotFound:
      return "not_found";
    case ErrorKind::kDimension:
      return "dimension";
    case ErrorKind::kUsage:
      return "usage";
    case ErrorKind::kEmptyDataset:
      return "empty_dataset";
    case ErrorKind::kDegenerateData:
      return "degenerate_data";
    case ErrorKind::kInfeasible:
      return "infeasible";
    case ErrorKind::kIo:
      return "io";
  }
  return "unknown";
}

}  // namespace phontypo
