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

#ifndef PHONTYPO_TOOLS_CLI_EXECUTE_H_
#define PHONTYPO_TOOLS_CLI_EXECUTE_H_

#include <iosfwd>
#include <string>
#include <vector>

#include "command.h"
#include "phontypo/reports.h"

namespace phontypo::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomainError = 1;
inline constexpr int kExitUsageError = 2;

// $PHONTYPO_DATA_DIR, else the data directory of the source tree.
std::string DataDir();

// Hex SHA-256 of a file's bytes. Throws IoError.
std::string Sha256File(const std::string& path);

// The RunManifest of a completed command. `options` holds the fully resolved
// option set, so CommandFromOptions(subcommand, options) replays the run.
struct RunManifest {
  std::string subcommand;
  std::map<std::string, std::string> options;
  std::vector<std::pair<std::string, std::string>> inputs;  // path, sha256
  std::vector<std::string> outputs;
  std::map<std::string, std::uint64_t> seeds;
  std::string timestamp;  // UTC, ISO 8601

  Json ToJson() const;
  static RunManifest FromJson(const Json& json);
};

// Dispatches `cmd`. The primary output goes to --out when given, else to
// `out`; the manifest is written next to --out as <out>.manifest.json.
// Domain errors print a JSON error object to `err` and return 1; usage
// errors return 2.
int Execute(Command cmd, std::ostream& out, std::ostream& err);

// parse_args followed by execute, with the same exit-code contract.
int Run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

// {"error": {"kind", "message", "key"?}} for an exception.
Json ErrorJson(const std::exception& e);

}  // namespace phontypo::cli

#endif  // PHONTYPO_TOOLS_CLI_EXECUTE_H_
