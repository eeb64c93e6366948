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

#ifndef PHONTYPO_TOOLS_CLI_COMMAND_H_
#define PHONTYPO_TOOLS_CLI_COMMAND_H_

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace phontypo::cli {

enum class OptionKind { kString, kPath, kInt, kDouble, kList, kFlag };

struct OptionSpec {
  std::string name;  // long flag without dashes
  OptionKind kind = OptionKind::kString;
  bool required = false;
  std::string default_value;  // empty: unset unless given
  std::string help;
};

struct SubcommandSpec {
  std::string name;
  std::string help;
  std::vector<OptionSpec> options;
  // At most one of each group may be given; `exactly_one` requires one.
  std::vector<std::vector<std::string>> exclusive_groups;
  bool exactly_one = false;
};

// Schemas of every subcommand, in display order.
const std::vector<SubcommandSpec>& Subcommands();
const SubcommandSpec* FindSubcommand(std::string_view name);

struct Command {
  std::string subcommand;
  // Resolved options: given flags, config file values and defaults. List
  // values are comma-joined; flags are "true"/"false".
  std::map<std::string, std::string> options;
  bool quiet = false;
  bool json_logs = false;

  bool Has(std::string_view key) const;
  const std::string& Get(std::string_view key) const;  // throws UsageError
  std::vector<std::string> GetList(std::string_view key) const;
  long long GetInt(std::string_view key) const;
  double GetDouble(std::string_view key) const;
  bool GetFlag(std::string_view key) const;
};

// Outcome of parse_args that is not a command: help text or version.
struct ParseOutcome {
  bool exit_early = false;
  std::string text;  // printed to stdout when exit_early
  Command command;
};

// Validates argv against the subcommand schemas. `--config FILE` (TOML/INI,
// keys named like the long flags, optionally under a [subcommand] section)
// fills options not given on the command line. Throws UsageError naming the
// offending flag.
ParseOutcome ParseArgs(const std::vector<std::string>& argv);

// Re-validates a resolved option set, e.g. one read back from a manifest.
Command CommandFromOptions(std::string subcommand,
                           const std::map<std::string, std::string>& options);

}  // namespace phontypo::cli

#endif  // PHONTYPO_TOOLS_CLI_COMMAND_H_
