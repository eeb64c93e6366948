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

#include "execute.h"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <ostream>
#include <set>

#include <openssl/evp.h>
#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include "phontypo/contrast_lab.h"
#include "phontypo/error.h"
#include "phontypo/feature_stream.h"
#include "phontypo/file_util.h"
#include "phontypo/inventory_induction.h"
#include "phontypo/snapshot.h"
#include "phontypo/stream_decoder.h"

namespace phontypo::cli {

namespace fs = std::filesystem;

namespace {

std::shared_ptr<spdlog::logger> MakeLogger(bool quiet, bool json_logs) {
  auto sink = std::make_shared<spdlog::sinks::stderr_sink_mt>();
  auto logger = std::make_shared<spdlog::logger>("phontypo", sink);
  logger->set_level(quiet ? spdlog::level::warn : spdlog::level::info);
  if (json_logs) {
    logger->set_pattern(R"({"time":"%Y-%m-%dT%H:%M:%S.%eZ","level":"%l","message":%v})",
                        spdlog::pattern_time_type::utc);
  } else {
    logger->set_pattern("[%l] %v");
  }
  return logger;
}

class Context {
 public:
  Context(Command& cmd, std::ostream& out)
      : cmd_(cmd), out_(out), logger_(MakeLogger(cmd.quiet, cmd.json_logs)) {
    manifest_.subcommand = cmd.subcommand;
  }

  void Info(const std::string& message) {
    logger_->info(cmd_.json_logs ? Json(message).dump() : message);
  }

  void Warn(const std::string& message) {
    logger_->warn(cmd_.json_logs ? Json(message).dump() : message);
  }

  std::string Input(const std::string& path) {
    manifest_.inputs.emplace_back(path, Sha256File(path));
    return ReadFile(path);
  }

  TypologyDatabase Database() {
    std::string path;
    if (cmd_.Has("db")) {
      path = cmd_.Get("db");
    } else {
      const fs::path dir = DataDir();
      path = (fs::exists(dir / "phoible.csv") ? dir / "phoible.csv"
                                              : dir / "phoible_sample.csv")
                 .string();
      cmd_.options["db"] = path;
    }
    manifest_.inputs.emplace_back(path, Sha256File(path));
    TypologyDatabase db = LoadDatabase(path);
    Info("loaded " + std::to_string(db.inventories().size()) + " inventories from " + path);
    return db;
  }

  void Seed(const std::string& name, std::uint64_t value) { manifest_.seeds[name] = value; }

  // Primary JSON output: --out if given, else `out`.
  void Emit(const Json& json) { EmitText(DumpJson(json)); }

  void EmitText(const std::string& text) {
    if (cmd_.Has("out")) {
      WriteFileAtomic(cmd_.Get("out"), text);
      manifest_.outputs.push_back(cmd_.Get("out"));
    } else {
      out_ << text;
    }
  }

  void WriteOutput(const fs::path& path, std::string_view content) {
    WriteFileAtomic(path, content);
    manifest_.outputs.push_back(path.string());
  }

  void Finish() {
    if (!cmd_.Has("out")) return;
    manifest_.options = cmd_.options;
    manifest_.timestamp = NowUtc();
    const std::string path = cmd_.Get("out") + ".manifest.json";
    WriteFileAtomic(path, DumpJson(manifest_.ToJson()));
    Info("wrote " + path);
  }

  Command& cmd() { return cmd_; }
  std::ostream& out() { return out_; }

 private:
  static std::string NowUtc() {
    const std::time_t now =
        std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
  }

  Command& cmd_;
  std::ostream& out_;
  std::shared_ptr<spdlog::logger> logger_;
  RunManifest manifest_;
};

std::uint64_t SeedOption(const Command& cmd, std::string_view key) {
  const long long v = cmd.GetInt(key);
  if (v < 0) throw UsageError("--" + std::string(key) + " must be >= 0");
  return static_cast<std::uint64_t>(v);
}

long long PositiveInt(const Command& cmd, std::string_view key) {
  const long long v = cmd.GetInt(key);
  if (v < 1) throw UsageError("--" + std::string(key) + " must be >= 1");
  return v;
}

// Files are taken as given; directories contribute their *.tsv files in name
// order.
std::vector<std::string> ExpandStreams(const std::vector<std::string>& items) {
  std::vector<std::string> paths;
  for (const auto& item : items) {
    if (fs::is_directory(item)) {
      std::vector<std::string> found;
      for (const auto& entry : fs::directory_iterator(item)) {
        if (entry.is_regular_file() && entry.path().extension() == ".tsv") {
          found.push_back(entry.path().string());
        }
      }
      std::sort(found.begin(), found.end());
      if (found.empty()) throw IoError("no .tsv streams in directory '" + item + "'");
      paths.insert(paths.end(), found.begin(), found.end());
    } else {
      paths.push_back(item);
    }
  }
  return paths;
}

std::vector<FeatureStream> LoadStreams(Context& ctx, const std::vector<std::string>& paths) {
  std::vector<FeatureStream> streams;
  for (const auto& path : paths) streams.push_back(ReadStreamTsv(ctx.Input(path)));
  ctx.Info("read " + std::to_string(streams.size()) + " streams");
  return streams;
}

InductionParams LoadInductionParams(Context& ctx) {
  Command& cmd = ctx.cmd();
  InductionParams params;
  std::string path;
  if (cmd.Has("induction-config")) {
    path = cmd.Get("induction-config");
  } else {
    const fs::path shipped = fs::path(DataDir()) / "config" / "induction.json";
    if (fs::exists(shipped)) {
      path = shipped.string();
      cmd.options["induction-config"] = path;
    }
  }
  if (!path.empty()) params = ParseInductionParams(ctx.Input(path));
  if (cmd.Has("lambda")) params.lambda = cmd.GetDouble("lambda");
  if (cmd.Has("max-size")) params.max_size = static_cast<std::size_t>(PositiveInt(cmd, "max-size"));
  if (cmd.Has("epsilon-gain")) params.epsilon_gain = cmd.GetDouble("epsilon-gain");
  ValidateInductionParams(params);
  return params;
}

struct ResolvedAnchor {
  LanguageAnchor anchor;
  Json description;
};

ResolvedAnchor ResolveAnchor(Context& ctx, const TypologyDatabase& db) {
  Command& cmd = ctx.cmd();
  if (cmd.Has("prior")) {
    LanguagePrior prior = ParseLanguagePrior(ctx.Input(cmd.Get("prior")));
    Json weights = Json::object();
    for (const auto& [lang, w] : prior.weights) weights[lang] = w;
    return {std::move(prior), Json{{"type", "prior"}, {"weights", weights}}};
  }
  if (cmd.Has("family")) {
    return {FamilyAnchor{cmd.Get("family"), {}},
            Json{{"type", "family"}, {"family", cmd.Get("family")}}};
  }
  SeedInventoryAnchor seed;
  Json description;
  if (cmd.Has("seed-inventory-id")) {
    const Inventory& inv = db.GetInventory(cmd.Get("seed-inventory-id"));
    seed.seed = inv;
    seed.exclude = {inv.language_name};
    description = {{"type", "seed_inventory"}, {"inventory_id", inv.inventory_id}};
  } else {
    const std::string& language = cmd.Get("seed-language");
    const auto inventories = InventoriesForLanguage(db, language);
    if (inventories.empty()) {
      throw NotFoundError("no inventories for language '" + language + "'", language);
    }
    std::set<std::string> glyphs;
    std::set<std::string> names;
    for (const Inventory* inv : inventories) {
      glyphs.insert(inv->glyphs.begin(), inv->glyphs.end());
      names.insert(inv->language_name);
    }
    seed.seed.inventory_id = "seed:" + language;
    seed.seed.glyphs.assign(glyphs.begin(), glyphs.end());
    seed.exclude.assign(names.begin(), names.end());
    description = {{"type", "seed_language"}, {"language", language}};
    std::vector<std::string> ids;
    for (const Inventory* inv : inventories) ids.push_back(inv->inventory_id);
    description["seed_inventory_ids"] = ids;
  }
  return {std::move(seed), std::move(description)};
}

Json ContrastJson(const ContrastSpec& contrast) {
  Json scope = Json::object();
  for (const auto& c : contrast.scope) scope[c.feature] = std::string(TernarySymbol(c.value));
  return Json{{"target_feature", contrast.target_feature},
              {"scope", scope},
              {"grounded", contrast.grounded},
              {"context_features", contrast.context_features}};
}

void RunImport(Context& ctx) {
  Command& cmd = ctx.cmd();
  ColumnMap columns;
  if (cmd.Has("column-map")) columns = ColumnMap::FromConfigText(ctx.Input(cmd.Get("column-map")));
  const std::string& path = cmd.Get("db");
  const std::string text = ctx.Input(path);
  const TypologyDatabase db =
      LooksLikeSnapshot(text) ? DecodeSnapshot(text) : ParsePhoible(text, columns);
  ctx.WriteOutput(cmd.Get("out"), EncodeSnapshot(db));
  ctx.out() << DumpJson(DatabaseSummaryJson(db));
}

void RunContrastEval(Context& ctx) {
  Command& cmd = ctx.cmd();
  const TypologyDatabase db = ctx.Database();
  ContrastConfig config = ParseContrastConfig(ctx.Input(cmd.Get("contrast-config")));
  if (cmd.Has("mode")) config.mode = ParseContrastMode(cmd.Get("mode"));
  if (cmd.Has("repeats")) config.repeats = static_cast<int>(PositiveInt(cmd, "repeats"));
  if (config.mode == ContrastMode::kSynthetic && !config.realization) {
    config.realization = RealizationParams{};
  }
  if (cmd.Has("seed")) {
    if (!config.realization) config.realization = RealizationParams{};
    config.realization->seed = SeedOption(cmd, "seed");
  }
  if (config.realization) ctx.Seed("realization", config.realization->seed);

  std::vector<std::string> languages = cmd.GetList("languages");
  std::vector<std::string> train = cmd.GetList("train");
  std::vector<std::string> test = cmd.GetList("test");
  if (languages.empty() && train.empty() && test.empty()) {
    languages = config.languages;
    train = config.train_languages;
    test = config.test_languages;
  }
  const bool heldout = !train.empty() || !test.empty();
  if (heldout && (!languages.empty() || train.empty() || test.empty())) {
    throw UsageError("held-out evaluation needs both --train and --test");
  }
  if (!heldout && languages.empty()) {
    throw UsageError("give --languages or --train/--test (or set them in the contrast config)");
  }

  std::vector<ConsistencyReport> folds;
  if (heldout) {
    folds.push_back(EvaluateHeldout(db, config.contrast, train, test, config.mode,
                                    config.realization, config.training, config.repeats));
  } else {
    folds = LeaveOneLanguageOut(db, config.contrast, languages, config.mode,
                                config.realization, config.training, config.repeats);
  }
  Json result;
  result["contrast"] = ContrastJson(config.contrast);
  result["mode"] = std::string(ContrastModeName(config.mode));
  result["evaluation"] = heldout ? "heldout" : "leave_one_language_out";
  result["realization"] =
      config.realization ? RealizationParamsJson(*config.realization) : Json(nullptr);
  result["training"] = TrainingHyperJson(config.training);
  result["repeats"] = config.repeats;
  Json reports = Json::array();
  double sum = 0.0;
  for (const auto& fold : folds) {
    reports.push_back(ConsistencyReportJson(fold));
    sum += fold.macro_accuracy;
  }
  result["folds"] = std::move(reports);
  result["macro_accuracy"] = sum / static_cast<double>(folds.size());
  ctx.Emit(result);
}

void RunGenStream(Context& ctx) {
  Command& cmd = ctx.cmd();
  const TypologyDatabase db = ctx.Database();
  const Inventory& inv = db.GetInventory(cmd.Get("inventory-id"));
  StreamGenParams params;
  params.n_frames = static_cast<std::size_t>(PositiveInt(cmd, "frames"));
  params.noise_sigma = cmd.GetDouble("noise");
  params.mean_run_length = cmd.GetDouble("mean-run");
  params.mu_plus = cmd.GetDouble("mu-plus");
  params.mu_minus = cmd.GetDouble("mu-minus");
  params.seed = SeedOption(cmd, "seed");
  ctx.Seed("seed", params.seed);
  const auto count = static_cast<std::size_t>(PositiveInt(cmd, "count"));

  const fs::path dir = cmd.Get("out");
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory '" + dir.string() + "': " + ec.message());
  Json truth;
  truth["inventory_id"] = inv.inventory_id;
  truth["seed"] = params.seed;
  Json streams = Json::array();
  const auto generated = GenerateStreams(db, inv, params, count);
  for (std::size_t i = 0; i < generated.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof(name), "stream_%03zu.tsv", i);
    ctx.WriteOutput(dir / name, WriteStreamTsv(generated[i].first));
    streams.push_back({{"file", name}, {"alignment", AlignmentJson(generated[i].second)}});
  }
  truth["streams"] = std::move(streams);
  ctx.WriteOutput(dir / "truth.json", DumpJson(truth));
  ctx.Info("wrote " + std::to_string(count) + " streams to " + dir.string());
}

void RunDecode(Context& ctx) {
  Command& cmd = ctx.cmd();
  const TypologyDatabase db = ctx.Database();
  const FeatureStream stream = ReadStreamTsv(ctx.Input(cmd.Get("stream")));
  DecodeParams params;
  params.switch_penalty = cmd.GetDouble("switch-penalty");
  params.min_duration = static_cast<int>(cmd.GetInt("min-duration"));
  params.top_k = static_cast<int>(cmd.GetInt("top-k"));
  params.clamp_epsilon = cmd.GetDouble("clamp-epsilon");
  ValidateDecodeParams(params);

  std::vector<Segment> candidates;
  if (cmd.Has("inventory-id")) {
    candidates = db.SegmentsOf(db.GetInventory(cmd.Get("inventory-id")));
  } else {
    for (const auto& [g, seg] : db.segments()) candidates.push_back(seg);
  }
  const SegmentLattice lattice = BuildLattice(stream, candidates, db.feature_system(), params);
  if (!lattice.degenerate_segments.empty()) {
    ctx.Warn(std::to_string(lattice.degenerate_segments.size()) +
             " candidates share no feature with the stream and score 0");
  }
  const Alignment alignment = DecodeBestPath(lattice, params);
  Json result;
  result["stream"] = cmd.Get("stream");
  result["inventory_id"] = cmd.Has("inventory-id") ? Json(cmd.Get("inventory-id")) : Json(nullptr);
  result["params"] = DecodeParamsJson(params);
  result["frames"] = stream.size();
  result["degenerate_segments"] = lattice.degenerate_segments;
  result["alignment"] = AlignmentJson(alignment);
  ctx.Emit(result);
}

void RunScoreInventory(Context& ctx) {
  Command& cmd = ctx.cmd();
  const TypologyDatabase db = ctx.Database();
  const InductionParams params = LoadInductionParams(ctx);
  const auto paths = ExpandStreams(cmd.GetList("streams"));
  const auto streams = LoadStreams(ctx, paths);
  const auto ids = cmd.GetList("inventory-ids");

  struct Row {
    const Inventory* inv;
    InventoryScore score;
  };
  std::vector<Row> rows;
  for (const auto& id : ids) {
    const Inventory& inv = db.GetInventory(id);
    rows.push_back(Row{&inv, ScoreInventory(streams, db, inv, params)});
  }
  std::vector<const Row*> ranking;
  for (const auto& r : rows) ranking.push_back(&r);
  std::stable_sort(ranking.begin(), ranking.end(), [](const Row* a, const Row* b) {
    return a->score.penalized > b->score.penalized;
  });

  Json result;
  result["params"] = InductionParamsJson(params);
  result["streams"] = paths;
  Json candidates = Json::array();
  for (const auto& r : rows) {
    Json row;
    row["inventory_id"] = r.inv->inventory_id;
    row["language_name"] = r.inv->language_name;
    row["source"] = r.inv->source;
    row["size"] = r.inv->size();
    const Json score = InventoryScoreJson(r.score);
    for (const auto& [k, v] : score.items()) row[k] = v;
    candidates.push_back(std::move(row));
  }
  result["candidates"] = std::move(candidates);
  Json order = Json::array();
  for (const Row* r : ranking) order.push_back(r->inv->inventory_id);
  result["ranking"] = order;
  result["best"] = ranking.front()->inv->inventory_id;
  ctx.Emit(result);
}

void RunInduce(Context& ctx) {
  Command& cmd = ctx.cmd();
  const TypologyDatabase db = ctx.Database();
  const InductionParams params = LoadInductionParams(ctx);
  const auto paths = ExpandStreams(cmd.GetList("streams"));
  const auto streams = LoadStreams(ctx, paths);
  const ResolvedAnchor anchor = ResolveAnchor(ctx, db);
  const SimilarityMetric metric = ParseSimilarityMetric(cmd.Get("metric"));
  const auto k = static_cast<std::size_t>(PositiveInt(cmd, "k"));
  const auto ranked = NearestLanguages(db, anchor.anchor, metric, k);
  const CandidatePool pool = BuildCandidatePool(db, ranked);
  ctx.Info("candidate pool of " + std::to_string(pool.size()) + " glyphs from " +
           std::to_string(ranked.size()) + " languages");
  const InductionResult induced = InduceInventory(streams, db, pool, params);
  const AdmissibilityReport admissibility = AdmissibilityFilter(
      induced.inventory.glyphs, db, static_cast<int>(cmd.GetInt("min-attestation")),
      ParseAdmissibilityMode(cmd.Get("admissibility-mode")),
      cmd.GetDouble("containment-threshold"));

  Json result;
  result["anchor"] = anchor.description;
  result["metric"] = std::string(SimilarityMetricName(metric));
  result["k"] = k;
  result["ranking"] = RankingJson(ranked);
  result["pool"] = CandidatePoolJson(pool);
  result["params"] = InductionParamsJson(params);
  result["streams"] = paths;
  const Json induced_json = InductionResultJson(induced);
  for (const auto& [key, v] : induced_json.items()) result[key] = v;
  result["admissibility"] = AdmissibilityJson(admissibility);
  ctx.Emit(result);
}

void RunNearestLangs(Context& ctx) {
  Command& cmd = ctx.cmd();
  const TypologyDatabase db = ctx.Database();
  const ResolvedAnchor anchor = ResolveAnchor(ctx, db);
  const SimilarityMetric metric = ParseSimilarityMetric(cmd.Get("metric"));
  const auto k = static_cast<std::size_t>(PositiveInt(cmd, "k"));
  Json result;
  result["anchor"] = anchor.description;
  result["metric"] = std::string(SimilarityMetricName(metric));
  result["k"] = k;
  result["ranking"] = RankingJson(NearestLanguages(db, anchor.anchor, metric, k));
  ctx.Emit(result);
}

}  // namespace

std::string DataDir() {
  if (const char* env = std::getenv("PHONTYPO_DATA_DIR"); env && *env) return env;
  return PHONTYPO_DEFAULT_DATA_DIR;
}

std::string Sha256File(const std::string& path) {
  const std::string bytes = ReadFile(path);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw IoError("sha256 failed for '" + path + "'");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  for (unsigned int i = 0; i < length; ++i) {
    hex.push_back(kHex[digest[i] >> 4]);
    hex.push_back(kHex[digest[i] & 0xf]);
  }
  return hex;
}

Json RunManifest::ToJson() const {
  Json j;
  j["tool"] = "phontypo";
  j["version"] = PHONTYPO_VERSION;
  j["subcommand"] = subcommand;
  j["options"] = options;
  Json in = Json::array();
  for (const auto& [path, digest] : inputs) in.push_back({{"path", path}, {"sha256", digest}});
  j["inputs"] = std::move(in);
  j["outputs"] = outputs;
  j["seeds"] = seeds;
  j["timestamp"] = timestamp;
  return j;
}

RunManifest RunManifest::FromJson(const Json& json) {
  try {
    RunManifest m;
    m.subcommand = json.at("subcommand").get<std::string>();
    m.options = json.at("options").get<std::map<std::string, std::string>>();
    for (const auto& in : json.at("inputs")) {
      m.inputs.emplace_back(in.at("path").get<std::string>(), in.at("sha256").get<std::string>());
    }
    m.outputs = json.at("outputs").get<std::vector<std::string>>();
    m.seeds = json.at("seeds").get<std::map<std::string, std::uint64_t>>();
    m.timestamp = json.at("timestamp").get<std::string>();
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed manifest: ") + e.what());
  }
}

Json ErrorJson(const std::exception& e) {
  Json body;
  if (const auto* err = dynamic_cast<const Error*>(&e)) {
    body["kind"] = std::string(ErrorKindName(err->kind()));
  } else {
    body["kind"] = "internal";
  }
  body["message"] = e.what();
  if (const auto* nf = dynamic_cast<const NotFoundError*>(&e)) body["key"] = nf->key();
  return Json{{"error", body}};
}

int Execute(Command cmd, std::ostream& out, std::ostream& err) {
  try {
    Context ctx(cmd, out);
    const std::string& sub = cmd.subcommand;
    if (sub == "import") {
      RunImport(ctx);
    } else if (sub == "contrast-eval") {
      RunContrastEval(ctx);
    } else if (sub == "gen-stream") {
      RunGenStream(ctx);
    } else if (sub == "decode") {
      RunDecode(ctx);
    } else if (sub == "score-inventory") {
      RunScoreInventory(ctx);
    } else if (sub == "induce") {
      RunInduce(ctx);
    } else if (sub == "nearest-langs") {
      RunNearestLangs(ctx);
    } else {
      throw UsageError("unknown subcommand '" + sub + "'");
    }
    ctx.Finish();
    return kExitOk;
  } catch (const UsageError& e) {
    err << ErrorJson(e).dump() << "\n";
    return kExitUsageError;
  } catch (const std::exception& e) {
    err << ErrorJson(e).dump() << "\n";
    return kExitDomainError;
  }
}

int Run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  ParseOutcome parsed;
  try {
    parsed = ParseArgs(argv);
  } catch (const UsageError& e) {
    err << ErrorJson(e).dump() << "\n";
    return kExitUsageError;
  }
  if (parsed.exit_early) {
    out << parsed.text;
    return kExitOk;
  }
  return Execute(std::move(parsed.command), out, err);
}

}  // namespace phontypo::cli
