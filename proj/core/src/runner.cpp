#include "claimcheck/runner.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <mutex>
#include <set>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "claimcheck/hashing.hpp"
#include "claimcheck/mock_providers.hpp"
#include "claimcheck/parallel.hpp"
#include "claimcheck/preprocess.hpp"
#include "claimcheck/report.hpp"

namespace claimcheck {

std::string_view tool_version() noexcept { return CLAIMCHECK_VERSION; }

bool ProviderSettings::all_mock() const noexcept {
  return encoder_url.empty() && translator_url.empty() && filler_url.empty() && generator_url.empty() &&
         embedder_url.empty();
}

std::string ProviderSettings::tag() const {
  if (all_mock()) return "mock";
  return Sha256{}
      .field(encoder_url)
      .field(translator_url)
      .field(filler_url)
      .field(generator_url)
      .field(embedder_url)
      .hex_digest()
      .substr(0, 16);
}

ProviderSet make_providers(const ProviderSettings& settings) {
  const RetryPolicy retry{settings.max_attempts, std::chrono::milliseconds(settings.backoff_ms)};
  const std::chrono::seconds timeout(settings.timeout_s);
  auto mocks = mock::default_providers();
  ProviderSet set;
  set.tag = settings.tag();
  set.augment.translator = settings.translator_url.empty()
                               ? mocks.translator
                               : std::make_shared<JsonTranslator>(http_transport(settings.translator_url, timeout), retry);
  set.augment.filler = settings.filler_url.empty()
                           ? mocks.filler
                           : std::make_shared<JsonMaskFiller>(http_transport(settings.filler_url, timeout), retry);
  set.augment.generator = settings.generator_url.empty()
                              ? mocks.generator
                              : std::make_shared<JsonTextGenerator>(http_transport(settings.generator_url, timeout), retry);
  set.encoder = std::make_shared<EncoderClient>(
      settings.encoder_url.empty() ? mock::encoder_transport() : http_transport(settings.encoder_url, timeout), retry);
  if (settings.embedder_url.empty()) {
    set.embedder = std::make_shared<HashingEmbedder>();
  } else {
    set.embedder = std::make_shared<JsonEmbedder>(http_transport(settings.embedder_url, timeout), retry);
  }
  return set;
}

void ExperimentConfig::validate() const {
  if (setting == Setting::ZeroShot) {
    if (strategy != Strategy::None) throw ConfigError("zero_shot requires strategy none");
    if (shots != 0) throw ConfigError("zero_shot requires shots = 0");
  } else {
    if (shots == 0) throw ConfigError("few_shot requires shots > 0");
    if (shots > holdout_size) {
      throw ConfigError(fmt::format("shots ({}) exceeds holdout_size ({})", shots, holdout_size));
    }
  }
  if (strategy != Strategy::None && setting != Setting::FewShot) throw ConfigError("augmentation requires few_shot");
  if (backend_id != kBaselineBackend && backend_id != kEncoderBackend) {
    throw ConfigError(fmt::format("unknown backend '{}' (expected baseline or encoder)", backend_id));
  }
  if (!(threshold >= 0.0 && threshold <= 1.0)) throw ConfigError("threshold must be in [0, 1]");
  if (!(substitution_ratio > 0.0 && substitution_ratio <= 1.0)) throw ConfigError("substitution_ratio must be in (0, 1]");
  if (holdout_size == 0) throw ConfigError("holdout_size must be positive");
  if (generation_params.max_length == 0) throw ConfigError("generation max_length must be positive");
}

ScorerConfig ExperimentConfig::scorer_config() const {
  ScorerConfig config = scorer;
  config.backend_id = backend_id;
  config.seed = seed;
  return config;
}

std::filesystem::path ExperimentConfig::effective_cache_dir() const {
  return cache_dir.empty() ? output_dir / "cache" : cache_dir;
}

nlohmann::json to_json(const ExperimentConfig& config) {
  nlohmann::ordered_json out;
  out["setting"] = to_string(config.setting);
  out["strategy"] = to_string(config.strategy);
  out["shots"] = config.shots;
  out["backend_id"] = config.backend_id;
  out["seed"] = config.seed;
  out["generation_params"] = to_json(config.generation_params);
  out["output_dir"] = config.output_dir.string();
  out["holdout_size"] = config.holdout_size;
  out["map_mode"] = to_string(config.map_mode);
  out["threshold"] = config.threshold;
  out["substitution_ratio"] = config.substitution_ratio;
  out["pivot_lang"] = config.pivot_lang;
  out["normalize"] = config.normalize;
  out["jobs"] = config.jobs;
  out["cache_dir"] = config.cache_dir.string();
  auto scorer = to_json(config.scorer);
  scorer.erase("backend_id");
  scorer.erase("seed");
  out["scorer"] = scorer;
  const auto& p = config.providers;
  out["providers"] = {{"encoder_url", p.encoder_url},     {"translator_url", p.translator_url},
                      {"filler_url", p.filler_url},       {"generator_url", p.generator_url},
                      {"embedder_url", p.embedder_url},   {"max_attempts", p.max_attempts},
                      {"backoff_ms", p.backoff_ms},       {"timeout_s", p.timeout_s},
                      {"max_parallel", p.max_parallel}};
  return nlohmann::json(out);
}

namespace {

ProviderSettings provider_settings_from_json(const nlohmann::json& object, ProviderSettings p) {
  if (!object.is_object()) throw ConfigError("providers must be an object");
  for (const auto& [key, value] : object.items()) {
    if (key == "encoder_url") p.encoder_url = value.get<std::string>();
    else if (key == "translator_url") p.translator_url = value.get<std::string>();
    else if (key == "filler_url") p.filler_url = value.get<std::string>();
    else if (key == "generator_url") p.generator_url = value.get<std::string>();
    else if (key == "embedder_url") p.embedder_url = value.get<std::string>();
    else if (key == "max_attempts") p.max_attempts = value.get<std::size_t>();
    else if (key == "backoff_ms") p.backoff_ms = value.get<std::size_t>();
    else if (key == "timeout_s") p.timeout_s = value.get<std::size_t>();
    else if (key == "max_parallel") p.max_parallel = value.get<std::size_t>();
    else throw ConfigError(fmt::format("providers: unknown key '{}'", key));
  }
  return p;
}

}  // namespace

ExperimentConfig experiment_config_from_json(const nlohmann::json& object, ExperimentConfig c) {
  if (!object.is_object()) throw ConfigError("experiment config must be a JSON object");
  try {
    for (const auto& [key, value] : object.items()) {
      if (key == "setting") c.setting = parse_setting(value.get<std::string>());
      else if (key == "strategy") c.strategy = parse_strategy(value.get<std::string>());
      else if (key == "shots") c.shots = value.get<std::size_t>();
      else if (key == "backend_id") c.backend_id = value.get<std::string>();
      else if (key == "seed") c.seed = value.get<std::uint64_t>();
      else if (key == "generation_params") c.generation_params = generation_params_from_json(value, c.generation_params);
      else if (key == "output_dir") c.output_dir = value.get<std::string>();
      else if (key == "holdout_size") c.holdout_size = value.get<std::size_t>();
      else if (key == "map_mode") c.map_mode = parse_map_mode(value.get<std::string>());
      else if (key == "threshold") c.threshold = value.get<double>();
      else if (key == "substitution_ratio") c.substitution_ratio = value.get<double>();
      else if (key == "pivot_lang") c.pivot_lang = value.get<std::string>();
      else if (key == "normalize") c.normalize = value.get<bool>();
      else if (key == "jobs") c.jobs = value.get<std::size_t>();
      else if (key == "cache_dir") c.cache_dir = value.get<std::string>();
      else if (key == "scorer") c.scorer = scorer_config_from_json(value, c.scorer);
      else if (key == "providers") c.providers = provider_settings_from_json(value, c.providers);
      else throw ConfigError(fmt::format("unknown config key '{}'", key));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(fmt::format("experiment config: {}", e.what()));
  } catch (const InvalidArgument& e) {
    throw ConfigError(fmt::format("experiment config: {}", e.what()));
  }
  return c;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path, ExperimentConfig defaults) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot open config file {}", path.string()));
  nlohmann::json object;
  try {
    in >> object;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(fmt::format("{}: {}", path.string(), e.what()));
  }
  return experiment_config_from_json(object, std::move(defaults));
}

Corpus normalize_corpus(const Corpus& corpus) {
  std::vector<TweetRecord> records = corpus.records();
  for (auto& record : records) {
    if (record.raw_text) continue;
    auto normalized = normalize_tweet(record.text);
    record.raw_text = std::move(record.text);
    record.text = std::move(normalized.text);
  }
  return Corpus(std::move(records));
}

StageError::StageError(std::string target, std::string stage, const std::string& message)
    : Error(fmt::format("{} [{}]: {}", target, stage, message)), target_(std::move(target)), stage_(std::move(stage)) {}

namespace {

template <typename Fn>
auto stage(std::string_view target, std::string_view name, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(std::string(target), std::string(name), e.what());
  }
}

std::vector<TrainingExample> examples_of(const Corpus& corpus, const std::vector<std::string>& ids) {
  std::vector<TrainingExample> out;
  out.reserve(ids.size());
  for (const auto& id : ids) {
    const auto& record = corpus.at(id);
    out.push_back({record.tweet_id, record.text, record.label});
  }
  return out;
}

}  // namespace

TopicResult run_topic(const ExperimentConfig& config, const TopicContext& context, std::string_view target) {
  const auto started = std::chrono::steady_clock::now();
  stage(target, "config", [&] { config.validate(); });
  const auto& corpus = context.corpus;

  const TopicSplit split = stage(target, "split", [&] {
    auto s = config.setting == Setting::ZeroShot ? zero_shot_split(corpus, context.holdouts, target)
                                                 : few_shot_split(corpus, context.holdouts, target, config.shots);
    if (s.setting() == Setting::ZeroShot) {
      for (const auto& id : s.train) {
        if (corpus.at(id).topic_id == target) {
          throw Error(fmt::format("zero-shot training data contains target record {}", id));
        }
      }
    }
    return s;
  });

  TopicResult result;
  result.seed = config.seed;
  result.scorer_config_hash = config.scorer_config().config_hash();
  result.n_train = split.train.size();
  result.n_few_shot = split.few_shot.size();
  result.train_hash = split.train_hash();
  result.test_hash = split.test_hash();

  std::vector<TrainingExample> examples = examples_of(corpus, split.train);
  if (config.strategy != Strategy::None) {
    const auto pool = examples_of(corpus, split.few_shot);
    AugmentSettings settings;
    settings.seed = config.seed;
    settings.generation = config.generation_params;
    settings.substitution_ratio = config.substitution_ratio;
    settings.pivot_lang = config.pivot_lang;
    settings.max_parallel = config.providers.max_parallel;
    auto augmented = stage(target, "augment", [&] {
      return augment_training(examples, pool, config.strategy, context.providers.augment, settings, context.cache);
    });
    result.augment_invoked = true;
    result.augment_cache_hit = augmented.cache_hit;
    result.n_synthetic = augmented.outcome.samples.size();
    result.n_skipped = augmented.outcome.skipped.size();
    result.n_identical = augmented.outcome.identical_to_origin;
    examples = std::move(augmented.examples);
  }

  const auto scorer = stage(target, "train", [&] {
    return train_cached(config.scorer_config(), examples, context.cache, context.providers.encoder,
                        &result.model_cache_hit);
  });

  std::vector<TextItem> items;
  LabelMap labels;
  for (const auto& id : split.test) {
    const auto& record = corpus.at(id);
    items.push_back({record.tweet_id, record.text});
    labels.emplace(record.tweet_id, record.label);
  }
  const auto ranking = stage(target, "rank", [&] { return rank(*scorer, items, std::string(target)); });

  result.report = stage(target, "evaluate", [&] {
    ScoreMap scores;
    for (const auto& entry : ranking.entries) scores.emplace(entry.tweet_id, entry.score);
    return evaluate(std::string(target), scores, labels, config.threshold, config.map_mode);
  });
  result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return result;
}

TopicResult run_topic(const ExperimentConfig& config, const Corpus& corpus, std::string_view target) {
  const Corpus prepared = config.normalize ? normalize_corpus(corpus) : corpus;
  const auto holdouts = make_holdouts(prepared, config.seed, config.holdout_size);
  const auto providers = make_providers(config.providers);
  const TopicContext context{prepared, holdouts, providers,
                             ArtifactCache(config.effective_cache_dir() / providers.tag)};
  return run_topic(config, context, target);
}

std::string_view to_string(Suite suite) noexcept {
  switch (suite) {
    case Suite::Table2: return "table2";
    case Suite::Table3: return "table3";
    case Suite::Table4: return "table4";
    case Suite::Fig4: return "fig4";
  }
  return "table2";
}

Suite parse_suite(std::string_view value) {
  if (value == "table2") return Suite::Table2;
  if (value == "table3") return Suite::Table3;
  if (value == "table4") return Suite::Table4;
  if (value == "fig4") return Suite::Fig4;
  throw InvalidArgument(fmt::format("unknown suite '{}' (expected table2, table3, table4 or fig4)", value));
}

namespace {

CellSpec zero_shot_cell() { return {"zero_shot", Setting::ZeroShot, Strategy::None, 0}; }

CellSpec few_shot_cell(Strategy strategy, std::size_t shots) {
  return {fmt::format("few_shot/{}/{}", to_string(strategy), shots), Setting::FewShot, strategy, shots};
}

}  // namespace

std::vector<CellSpec> suite_variants(Suite suite) {
  switch (suite) {
    case Suite::Table2:
      return {zero_shot_cell()};
    case Suite::Table3:
      return {zero_shot_cell(), few_shot_cell(Strategy::BT, kDefaultHoldoutSize),
              few_shot_cell(Strategy::CWE, kDefaultHoldoutSize), few_shot_cell(Strategy::TxtGen, kDefaultHoldoutSize)};
    case Suite::Table4:
      return {few_shot_cell(Strategy::None, kDefaultHoldoutSize), few_shot_cell(Strategy::CWE, kDefaultHoldoutSize)};
    case Suite::Fig4: {
      std::vector<CellSpec> out;
      for (auto shots : kShotSweep) out.push_back(few_shot_cell(Strategy::None, shots));
      return out;
    }
  }
  return {};
}

std::size_t RunRecord::failed_cells() const {
  return static_cast<std::size_t>(std::count_if(cells.begin(), cells.end(), [](const Cell& c) { return !c.result; }));
}

std::size_t RunRecord::skipped_samples() const {
  std::size_t total = 0;
  for (const auto& cell : cells) {
    if (cell.result) total += cell.result->n_skipped;
  }
  return total;
}

const Cell* RunRecord::find(std::string_view variant, std::string_view topic_id) const {
  for (const auto& cell : cells) {
    if (cell.spec.variant == variant && cell.topic_id == topic_id) return &cell;
  }
  return nullptr;
}

RunRecord run_suite(Suite suite, const ExperimentConfig& base, const Corpus& corpus) {
  return run_suite(suite, base, corpus, make_providers(base.providers));
}

RunRecord run_suite(Suite suite, const ExperimentConfig& base, const Corpus& corpus, const ProviderSet& providers) {
  const auto started = std::chrono::steady_clock::now();
  RunRecord record;
  record.suite = suite;
  record.config = base;
  record.corpus_hash = corpus.content_hash();
  record.topic_ids = corpus.topic_ids();
  record.version = std::string(tool_version());

  const Corpus prepared = base.normalize ? normalize_corpus(corpus) : corpus;
  const auto holdouts = make_holdouts(prepared, base.seed, base.holdout_size);
  record.warnings = holdouts.warnings;
  const TopicContext context{prepared, holdouts, providers, ArtifactCache(base.effective_cache_dir() / providers.tag)};

  for (const auto& spec : suite_variants(suite)) {
    for (const auto& topic : record.topic_ids) record.cells.push_back({spec, topic, std::nullopt, {}});
  }
  parallel_for(record.cells.size(), base.jobs, [&](std::size_t i) {
    auto& cell = record.cells[i];
    ExperimentConfig config = base;
    config.setting = cell.spec.setting;
    config.strategy = cell.spec.strategy;
    config.shots = cell.spec.shots;
    try {
      cell.result = run_topic(config, context, cell.topic_id);
    } catch (const std::exception& e) {
      cell.error = e.what();
    }
  });
  record.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return record;
}

void validate_run_record(const RunRecord& record) {
  const auto expected_hash = record.config.scorer_config().config_hash();
  for (const auto& cell : record.cells) {
    if (!cell.result) continue;
    if (cell.result->seed != record.config.seed) {
      throw Error(fmt::format("{} {}: seed {} differs from snapshot seed {}", cell.spec.variant, cell.topic_id,
                              cell.result->seed, record.config.seed));
    }
    if (cell.result->scorer_config_hash != expected_hash) {
      throw Error(fmt::format("{} {}: scorer config differs from snapshot", cell.spec.variant, cell.topic_id));
    }
  }
}

namespace {

struct Aggregate {
  std::string variant;
  std::size_t ok = 0;
  double ap_cw = 0.0;
  double ap_ncw = 0.0;
  double map = 0.0;
};

std::vector<Aggregate> aggregates(const RunRecord& record) {
  std::vector<Aggregate> out;
  for (const auto& spec : suite_variants(record.suite)) {
    Aggregate agg{spec.variant};
    for (const auto& cell : record.cells) {
      if (cell.spec.variant != spec.variant || !cell.result) continue;
      agg.ap_cw += cell.result->report.ap_cw;
      agg.ap_ncw += cell.result->report.ap_ncw;
      agg.map += cell.result->report.map;
      ++agg.ok;
    }
    if (agg.ok > 0) {
      const double n = static_cast<double>(agg.ok);
      agg.ap_cw /= n;
      agg.ap_ncw /= n;
      agg.map /= n;
    }
    out.push_back(agg);
  }
  return out;
}

}  // namespace

nlohmann::json to_json(const RunRecord& record) {
  nlohmann::ordered_json out;
  out["tool_version"] = record.version;
  out["suite"] = to_string(record.suite);
  out["seed"] = record.config.seed;
  out["corpus_hash"] = record.corpus_hash;
  out["config"] = to_json(record.config);
  out["metadata"] = {
      {"augmentation_in_fig4", false},
      {"holdouts", {{"size", record.config.holdout_size}, {"stratified", true}, {"shared_across_settings", true}}},
      {"map_mode", to_string(record.config.map_mode)},
      {"normalized", record.config.normalize},
      {"providers", record.config.providers.tag()},
      {"rng", "mt19937_64 streams derived from the master seed"}};
  out["warnings"] = record.warnings;

  nlohmann::json cells = nlohmann::json::array();
  for (const auto& cell : record.cells) {
    nlohmann::ordered_json c;
    c["variant"] = cell.spec.variant;
    c["setting"] = to_string(cell.spec.setting);
    c["strategy"] = to_string(cell.spec.strategy);
    c["shots"] = cell.spec.shots;
    c["topic_id"] = cell.topic_id;
    c["status"] = cell.result ? "ok" : "failed";
    if (cell.result) {
      const auto& r = *cell.result;
      c["seed"] = r.seed;
      c["scorer_config_hash"] = r.scorer_config_hash;
      c["report"] = to_json(r.report);
      c["n_train"] = r.n_train;
      c["n_few_shot"] = r.n_few_shot;
      c["n_synthetic"] = r.n_synthetic;
      c["n_skipped"] = r.n_skipped;
      c["n_identical"] = r.n_identical;
      c["augment_invoked"] = r.augment_invoked;
      c["train_hash"] = r.train_hash;
      c["test_hash"] = r.test_hash;
      c["runtime"] = {{"seconds", r.seconds},
                      {"model_cache_hit", r.model_cache_hit},
                      {"augment_cache_hit", r.augment_cache_hit}};
    } else {
      c["error"] = cell.error;
    }
    cells.push_back(nlohmann::json(c));
  }
  out["cells"] = cells;

  nlohmann::json aggs = nlohmann::json::array();
  for (const auto& agg : aggregates(record)) {
    aggs.push_back({{"variant", agg.variant},
                    {"topics_ok", agg.ok},
                    {"ap_cw", agg.ap_cw},
                    {"ap_ncw", agg.ap_ncw},
                    {"map", agg.map}});
  }
  out["aggregates"] = aggs;
  out["skip_counts"] = {{"augment_samples", record.skipped_samples()}, {"failed_cells", record.failed_cells()}};
  out["runtime"] = {{"wall_seconds", record.wall_seconds}};
  return nlohmann::json(out);
}

std::string cells_csv(const RunRecord& record) {
  std::string out =
      "suite,variant,setting,strategy,shots,topic_id,status,n_train,n_few_shot,n_synthetic,n_skipped,n_test,"
      "ap_cw,ap_ncw,map,precision,recall,f1,test_hash,error\n";
  for (const auto& cell : record.cells) {
    out += fmt::format("{},{},{},{},{},{},", to_string(record.suite), csv_escape(cell.spec.variant),
                       to_string(cell.spec.setting), to_string(cell.spec.strategy), cell.spec.shots,
                       csv_escape(cell.topic_id));
    if (cell.result) {
      const auto& r = *cell.result;
      const auto& e = r.report;
      out += fmt::format("ok,{},{},{},{},{},{},{},{},{},{},{},{},\n", r.n_train, r.n_few_shot, r.n_synthetic,
                         r.n_skipped, e.n_test, format_fixed(e.ap_cw), format_fixed(e.ap_ncw), format_fixed(e.map),
                         format_fixed(e.precision), format_fixed(e.recall), format_fixed(e.f1), r.test_hash);
    } else {
      out += fmt::format("failed,,,,,,,,,,,,,{}\n", csv_escape(cell.error));
    }
  }
  return out;
}

namespace {

std::vector<ResultRow> result_rows(const RunRecord& record, std::string_view variant) {
  std::vector<ResultRow> rows;
  for (const auto& topic : record.topic_ids) {
    const auto* cell = record.find(variant, topic);
    ResultRow row{topic, std::nullopt};
    if (cell && cell->result) row.report = cell->result->report;
    rows.push_back(std::move(row));
  }
  return rows;
}

// Improvement table over the topics where the base and every variant ran.
std::string improvement_section(const RunRecord& record, std::string_view title, const std::string& base_variant,
                                std::string_view base_label, const std::vector<std::pair<std::string, std::string>>& variants) {
  ReportSet base;
  std::vector<std::pair<std::string, ReportSet>> columns;
  for (const auto& [label, variant] : variants) columns.emplace_back(label, ReportSet{});
  std::vector<std::string> failed;
  for (const auto& topic : record.topic_ids) {
    const auto* b = record.find(base_variant, topic);
    bool complete = b && b->result;
    for (const auto& [label, variant] : variants) {
      const auto* c = record.find(variant, topic);
      complete = complete && c && c->result;
    }
    if (!complete) {
      failed.push_back(topic);
      continue;
    }
    base.emplace(topic, b->result->report);
    for (std::size_t v = 0; v < variants.size(); ++v) {
      columns[v].second.emplace(topic, record.find(variants[v].second, topic)->result->report);
    }
  }
  if (base.empty()) return fmt::format("### {}\n\nNo topic completed every cell.\n\n", title);
  return render_improvement_table(title, base_label, improvement_table(base, columns), failed);
}

}  // namespace

std::string render_report(const RunRecord& record) {
  std::string out = fmt::format("# claimcheck suite {}\n\nseed {} · backend {} · map_mode {} · corpus {}\n\n",
                                to_string(record.suite), record.config.seed, record.config.backend_id,
                                to_string(record.config.map_mode), record.corpus_hash.substr(0, 16));
  switch (record.suite) {
    case Suite::Table2:
      out += render_results_table("Zero-shot results", result_rows(record, "zero_shot"));
      break;
    case Suite::Table3: {
      out += render_results_table("Zero-shot results", result_rows(record, "zero_shot"));
      std::vector<std::pair<std::string, std::string>> variants;
      for (auto strategy : {Strategy::BT, Strategy::CWE, Strategy::TxtGen}) {
        variants.emplace_back(std::string(to_string(strategy)), few_shot_cell(strategy, kDefaultHoldoutSize).variant);
      }
      out += improvement_section(record, "Few-shot with augmentation vs zero-shot", "zero_shot", "Zero-shot", variants);
      break;
    }
    case Suite::Table4:
      out += improvement_section(record, "CWE augmentation vs no augmentation",
                                 few_shot_cell(Strategy::None, kDefaultHoldoutSize).variant, "no DA",
                                 {{"CWE", few_shot_cell(Strategy::CWE, kDefaultHoldoutSize).variant}});
      break;
    case Suite::Fig4: {
      std::vector<SweepColumn> columns;
      for (auto shots : kShotSweep) {
        SweepColumn column{shots, {}};
        for (const auto& row : result_rows(record, few_shot_cell(Strategy::None, shots).variant)) {
          column.maps.push_back(row.report ? std::optional<double>(row.report->map) : std::nullopt);
        }
        columns.push_back(std::move(column));
      }
      out += render_shot_sweep("Few-shot MAP by number of target-topic samples (no augmentation)", record.topic_ids,
                               columns);
      break;
    }
  }
  if (record.failed_cells() > 0) {
    out += fmt::format("## Failed cells ({})\n\n", record.failed_cells());
    for (const auto& cell : record.cells) {
      if (!cell.result) out += fmt::format("- {} {}: {}\n", cell.spec.variant, cell.topic_id, cell.error);
    }
    out += "\n";
  }
  if (!record.warnings.empty()) {
    out += "## Warnings\n\n";
    for (const auto& w : record.warnings) out += fmt::format("- {}\n", w);
    out += "\n";
  }
  return out;
}

namespace {

void write_text(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(fmt::format("cannot write {}", path.string()));
  out << content;
  if (!out) throw Error(fmt::format("write failed: {}", path.string()));
}

}  // namespace

void write_outputs(const RunRecord& record, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  write_text(dir / "report.md", render_report(record));
  write_text(dir / "cells.csv", cells_csv(record));
  write_text(dir / "run.json", to_json(record).dump(2) + "\n");
}

}  // namespace claimcheck
