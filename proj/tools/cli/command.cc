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

#include "command.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <memory>

#include <CLI11.hpp>

#include "phontypo/error.h"

namespace phontypo::cli {

namespace {

OptionSpec Opt(std::string name, OptionKind kind, std::string help,
               std::string default_value = "", bool required = false) {
  return OptionSpec{std::move(name), kind, required, std::move(default_value),
                    std::move(help)};
}

OptionSpec Required(std::string name, OptionKind kind, std::string help) {
  return Opt(std::move(name), kind, std::move(help), "", true);
}

OptionSpec DbOption() {
  return Opt("db", OptionKind::kPath,
             "PHOIBLE-style CSV or snapshot (default: $PHONTYPO_DATA_DIR/phoible.csv)");
}

std::vector<SubcommandSpec> BuildSchemas() {
  using K = OptionKind;
  std::vector<SubcommandSpec> specs;
  specs.push_back({"import",
                   "Parse a delimited inventory file and write a binary snapshot",
                   {Required("db", K::kPath, "input CSV"),
                    Required("out", K::kPath, "snapshot path"),
                    Opt("column-map", K::kPath, "key=value column mapping file")},
                   {},
                   false});
  specs.push_back({"contrast-eval",
                   "Held-out-language consistency of a feature contrast",
                   {DbOption(), Required("contrast-config", K::kPath, "contrast JSON"),
                    Opt("languages", K::kList, "leave-one-language-out over these"),
                    Opt("train", K::kList, "training languages"),
                    Opt("test", K::kList, "held-out languages"),
                    Opt("mode", K::kString, "symbolic or synthetic"),
                    Opt("seed", K::kInt, "realization seed"),
                    Opt("repeats", K::kInt, "draws per segment"),
                    Opt("out", K::kPath, "report JSON (default: stdout)")},
                   {{"languages", "train"}, {"languages", "test"}},
                   false});
  specs.push_back({"gen-stream",
                   "Generate synthetic feature streams from an inventory",
                   {DbOption(), Required("inventory-id", K::kString, "source inventory"),
                    Opt("frames", K::kInt, "frames per stream", "200"),
                    Opt("noise", K::kDouble, "posterior noise sigma", "0.1"),
                    Opt("mean-run", K::kDouble, "mean run length in frames", "8"),
                    Opt("mu-plus", K::kDouble, "mean posterior of '+' features", "0.9"),
                    Opt("mu-minus", K::kDouble, "mean posterior of '-' features", "0.1"),
                    Opt("count", K::kInt, "number of streams", "1"),
                    Opt("seed", K::kInt, "generator seed", "0"),
                    Required("out", K::kPath, "output directory")},
                   {},
                   false});
  specs.push_back({"decode",
                   "Best segment sequence for one stream",
                   {DbOption(), Required("stream", K::kPath, "stream TSV"),
                    Opt("inventory-id", K::kString,
                        "restrict candidates to this inventory (default: all segments)"),
                    Opt("switch-penalty", K::kDouble, "cost per segment change", "0"),
                    Opt("min-duration", K::kInt, "minimum run length", "1"),
                    Opt("top-k", K::kInt, "arcs kept per frame", "64"),
                    Opt("clamp-epsilon", K::kDouble, "posterior clamp", "1e-06"),
                    Opt("out", K::kPath, "alignment JSON (default: stdout)")},
                   {},
                   false});
  specs.push_back({"score-inventory",
                   "Compare candidate inventories on a set of streams",
                   {DbOption(), Required("streams", K::kList, "stream files or directories"),
                    Required("inventory-ids", K::kList, "candidate inventories"),
                    Opt("lambda", K::kDouble, "size penalty (default: induction config)"),
                    Opt("induction-config", K::kPath,
                        "induction JSON (default: $PHONTYPO_DATA_DIR/config/induction.json)"),
                    Opt("out", K::kPath, "comparison JSON (default: stdout)")},
                   {},
                   false});
  specs.push_back({"induce",
                   "Induce an inventory from streams and closest languages",
                   {DbOption(), Required("streams", K::kList, "stream files or directories"),
                    Opt("prior", K::kPath, "language prior JSON"),
                    Opt("seed-language", K::kString, "anchor on this language's inventories"),
                    Opt("seed-inventory-id", K::kString, "anchor on one inventory"),
                    Opt("family", K::kString, "anchor on a language family"),
                    Opt("k", K::kInt, "closest languages used for the pool", "5"),
                    Opt("metric", K::kString, "jaccard or feature_match", "jaccard"),
                    Opt("lambda", K::kDouble, "size penalty (default: induction config)"),
                    Opt("max-size", K::kInt, "largest inventory"),
                    Opt("epsilon-gain", K::kDouble, "stop threshold"),
                    Opt("induction-config", K::kPath, "induction JSON"),
                    Opt("min-attestation", K::kInt, "admissibility threshold", "1"),
                    Opt("admissibility-mode", K::kString, "per_segment or co_occurrence",
                        "co_occurrence"),
                    Opt("containment-threshold", K::kDouble,
                        "co-occurrence admissibility threshold", "0.8"),
                    Opt("out", K::kPath, "induction report JSON (default: stdout)")},
                   {{"prior", "seed-language", "seed-inventory-id", "family"}},
                   true});
  specs.push_back({"nearest-langs",
                   "Rank languages close to an anchor",
                   {DbOption(), Opt("prior", K::kPath, "language prior JSON"),
                    Opt("seed-language", K::kString, "anchor on this language's inventories"),
                    Opt("seed-inventory-id", K::kString, "anchor on one inventory"),
                    Opt("family", K::kString, "anchor on a language family"),
                    Opt("metric", K::kString, "jaccard or feature_match", "jaccard"),
                    Opt("k", K::kInt, "languages returned", "5"),
                    Opt("out", K::kPath, "ranking JSON (default: stdout)")},
                   {{"prior", "seed-language", "seed-inventory-id", "family"}},
                   true});
  return specs;
}

bool ParsesAsInt(std::string_view s) {
  long long v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

bool ParsesAsDouble(std::string_view s) {
  double v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  return res.ec == std::errc() && res.ptr == s.data() + s.size() && std::isfinite(v);
}

std::string Join(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out.push_back(',');
    out += items[i];
  }
  return out;
}

// Checks kinds, required options and exclusive groups, then fills defaults.
void Validate(const SubcommandSpec& spec, std::map<std::string, std::string>& options) {
  for (const auto& [key, value] : options) {
    const auto it = std::find_if(spec.options.begin(), spec.options.end(),
                                 [&](const OptionSpec& o) { return o.name == key; });
    if (it == spec.options.end()) {
      throw UsageError(spec.name + ": unknown option --" + key);
    }
    if (it->kind == OptionKind::kInt && !ParsesAsInt(value)) {
      throw UsageError("--" + key + ": expected an integer, got '" + value + "'");
    }
    if (it->kind == OptionKind::kDouble && !ParsesAsDouble(value)) {
      throw UsageError("--" + key + ": expected a number, got '" + value + "'");
    }
    if (it->kind == OptionKind::kFlag && value != "true" && value != "false") {
      throw UsageError("--" + key + ": expected true or false");
    }
    if ((it->kind == OptionKind::kPath || it->kind == OptionKind::kList) && value.empty()) {
      throw UsageError("--" + key + ": empty value");
    }
  }
  for (const auto& group : spec.exclusive_groups) {
    std::vector<std::string> given;
    for (const auto& name : group) {
      if (options.count(name)) given.push_back("--" + name);
    }
    if (given.size() > 1) {
      throw UsageError(spec.name + ": " + given[0] + " and " + given[1] +
                       " are mutually exclusive");
    }
    if (spec.exactly_one && given.empty()) {
      std::vector<std::string> flags;
      for (const auto& name : group) flags.push_back("--" + name);
      throw UsageError(spec.name + ": one of " + Join(flags) + " is required");
    }
  }
  for (const auto& opt : spec.options) {
    if (options.count(opt.name)) continue;
    if (opt.required) throw UsageError(spec.name + ": missing required option --" + opt.name);
    if (!opt.default_value.empty()) options[opt.name] = opt.default_value;
  }
}

}  // namespace

const std::vector<SubcommandSpec>& Subcommands() {
  static const std::vector<SubcommandSpec> specs = BuildSchemas();
  return specs;
}

const SubcommandSpec* FindSubcommand(std::string_view name) {
  for (const auto& spec : Subcommands()) {
    if (spec.name == name) return &spec;
  }
  return nullptr;
}

bool Command::Has(std::string_view key) const { return options.count(std::string(key)) > 0; }

const std::string& Command::Get(std::string_view key) const {
  const auto it = options.find(std::string(key));
  if (it == options.end()) throw UsageError(subcommand + ": missing option --" + std::string(key));
  return it->second;
}

std::vector<std::string> Command::GetList(std::string_view key) const {
  std::vector<std::string> out;
  if (!Has(key)) return out;
  const std::string& value = Get(key);
  std::size_t start = 0;
  while (start <= value.size()) {
    auto comma = value.find(',', start);
    if (comma == std::string::npos) comma = value.size();
    if (comma > start) out.push_back(value.substr(start, comma - start));
    start = comma + 1;
  }
  return out;
}

long long Command::GetInt(std::string_view key) const {
  const std::string& s = Get(key);
  long long v = 0;
  std::from_chars(s.data(), s.data() + s.size(), v);
  return v;
}

double Command::GetDouble(std::string_view key) const {
  const std::string& s = Get(key);
  double v = 0;
  std::from_chars(s.data(), s.data() + s.size(), v);
  return v;
}

bool Command::GetFlag(std::string_view key) const { return Has(key) && Get(key) == "true"; }

ParseOutcome ParseArgs(const std::vector<std::string>& argv) {
  CLI::App app{"phontypo: typology-grounded phonology toolkit", "phontypo"};
  app.require_subcommand(1);
  app.set_config("--config", "", "TOML/INI file with default option values");
  app.set_version_flag("--version", std::string(PHONTYPO_VERSION));
  bool quiet = false;
  bool json_logs = false;
  app.add_flag("--quiet", quiet, "Only log warnings and errors");
  app.add_flag("--json-logs", json_logs, "Log as one JSON object per line");

  struct Bound {
    const SubcommandSpec* spec;
    CLI::App* app;
    std::map<std::string, std::string> scalars;
    std::map<std::string, std::vector<std::string>> lists;
    std::map<std::string, bool> flags;
  };
  std::vector<std::unique_ptr<Bound>> bound;
  for (const auto& spec : Subcommands()) {
    auto b = std::make_unique<Bound>();
    b->spec = &spec;
    b->app = app.add_subcommand(spec.name, spec.help);
    b->app->fallthrough();
    for (const auto& opt : spec.options) {
      std::string help = opt.help;
      if (!opt.default_value.empty()) help += " [" + opt.default_value + "]";
      if (opt.required) help += " (required)";
      const std::string flag = "--" + opt.name;
      switch (opt.kind) {
        case OptionKind::kList:
          b->app->add_option(flag, b->lists[opt.name], help)->delimiter(',');
          break;
        case OptionKind::kFlag:
          b->app->add_flag(flag, b->flags[opt.name], help);
          break;
        default:
          b->app->add_option(flag, b->scalars[opt.name], help);
          break;
      }
    }
    bound.push_back(std::move(b));
  }

  for (std::size_t i = 0; i < argv.size(); ++i) {
    if (argv[i] == "--config") {
      ++i;
      continue;
    }
    if (argv[i].empty() || argv[i][0] == '-') continue;
    if (!FindSubcommand(argv[i])) throw UsageError("unknown subcommand '" + argv[i] + "'");
    break;
  }
  std::vector<std::string> reversed(argv.rbegin(), argv.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    const CLI::App* target = &app;
    for (const auto& b : bound) {
      if (b->app->parsed()) target = b->app;
    }
    return ParseOutcome{true, target->help(), {}};
  } catch (const CLI::CallForAllHelp&) {
    return ParseOutcome{true, app.help("", CLI::AppFormatMode::All), {}};
  } catch (const CLI::CallForVersion&) {
    return ParseOutcome{true, std::string(PHONTYPO_VERSION) + "\n", {}};
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  for (const auto& b : bound) {
    if (!b->app->parsed()) continue;
    Command cmd;
    cmd.subcommand = b->spec->name;
    cmd.quiet = quiet;
    cmd.json_logs = json_logs;
    for (const auto& opt : b->spec->options) {
      CLI::Option* o = b->app->get_option("--" + opt.name);
      if (o->count() == 0) continue;
      switch (opt.kind) {
        case OptionKind::kList:
          if (!b->lists[opt.name].empty()) cmd.options[opt.name] = Join(b->lists[opt.name]);
          break;
        case OptionKind::kFlag:
          cmd.options[opt.name] = b->flags[opt.name] ? "true" : "false";
          break;
        default:
          cmd.options[opt.name] = b->scalars[opt.name];
          break;
      }
    }
    Validate(*b->spec, cmd.options);
    return ParseOutcome{false, "", std::move(cmd)};
  }
  throw UsageError("a subcommand is required");
}

Command CommandFromOptions(std::string subcommand,
                           const std::map<std::string, std::string>& options) {
  const SubcommandSpec* spec = FindSubcommand(subcommand);
  if (!spec) throw UsageError("unknown subcommand '" + subcommand + "'");
  Command cmd;
  cmd.subcommand = std::move(subcommand);
  cmd.options = options;
  Validate(*spec, cmd.options);
  return cmd;
}

}  // namespace phontypo::cli
