#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "claimcheck/augment.hpp"
#include "claimcheck/cache.hpp"
#include "claimcheck/corpus.hpp"
#include "claimcheck/error.hpp"
#include "claimcheck/evaluation.hpp"
#include "claimcheck/model.hpp"
#include "claimcheck/splits.hpp"
#include "claimcheck/topicsim.hpp"

namespace claimcheck {

std::string_view tool_version() noexcept;

// Endpoints of the external providers. An empty URL selects the in-process
// mock for that role.
struct ProviderSettings {
  std::string encoder_url;
  std::string translator_url;
  std::string filler_url;
  std::string generator_url;
  std::string embedder_url;
  std::size_t max_attempts = 3;
  std::size_t backoff_ms = 250;
  std::size_t timeout_s = 600;
  std::size_t max_parallel = 1;

  bool all_mock() const noexcept;
  // "mock", or a short hash of the endpoints; separates cache roots.
  std::string tag() const;
};

struct ProviderSet {
  AugmentProviders augment;
  std::shared_ptr<const EncoderClient> encoder;
  std::shared_ptr<const Embedder> embedder;
  std::string tag = "mock";
};

ProviderSet make_providers(const ProviderSettings& settings);

struct ExperimentConfig {
  Setting setting = Setting::ZeroShot;
  Strategy strategy = Strategy::None;
  std::size_t shots = 0;
  std::string backend_id = std::string(kBaselineBackend);
  std::uint64_t seed = 0;
  GenerationParams generation_params;
  std::filesystem::path output_dir = "out";

  std::size_t holdout_size = kDefaultHoldoutSize;
  MapMode map_mode = MapMode::TwoClass;
  double threshold = 0.5;
  double substitution_ratio = 0.3;
  std::string pivot_lang = "en";
  bool normalize = true;
  std::size_t jobs = 1;
  std::filesystem::path cache_dir;  // empty: <output_dir>/cache
  ScorerConfig scorer;              // backend_id and seed are taken from above
  ProviderSettings providers;

  // Throws ConfigError:
  //   zero_shot => strategy none and shots 0
  //   strategy != none => few_shot
  //   few_shot => 0 < shots <= holdout_size
  void validate() const;
  ScorerConfig scorer_config() const;
  std::filesystem::path effective_cache_dir() const;
};

nlohmann::json to_json(const ExperimentConfig& config);
// Keys absent from `object` keep their value from `defaults`; unknown keys throw.
ExperimentConfig experiment_config_from_json(const nlohmann::json& object, ExperimentConfig defaults = {});
ExperimentConfig load_experiment_config(const std::filesystem::path& path, ExperimentConfig defaults = {});

// Replaces every text by its normalized form, keeping the original in raw_text.
// Records that already carry raw_text are left alone.
Corpus normalize_corpus(const Corpus& corpus);

// Raised by run_topic; what() names the target and the failing stage.
class StageError : public Error {
 public:
  StageError(std::string target, std::string stage, const std::string& message);

  const std::string& target() const noexcept { return target_; }
  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string target_;
  std::string stage_;
};

struct TopicResult {
  EvalReport report;
  std::uint64_t seed = 0;
  std::string scorer_config_hash;
  std::size_t n_train = 0;  // before augmentation
  std::size_t n_few_shot = 0;
  std::size_t n_synthetic = 0;
  std::size_t n_skipped = 0;
  std::size_t n_identical = 0;
  std::string train_hash;
  std::string test_hash;
  bool augment_invoked = false;
  bool model_cache_hit = false;
  bool augment_cache_hit = false;
  double seconds = 0.0;
};

// Shared, read-only inputs of the cells of one suite. `corpus` holds the
// texts fed to the scorer, i.e. already normalized when normalization is on.
struct TopicContext {
  const Corpus& corpus;
  const HoldoutTable& holdouts;
  const ProviderSet& providers;
  ArtifactCache cache;
};

TopicResult run_topic(const ExperimentConfig& config, const TopicContext& context, std::string_view target);

// Self-contained form: normalizes, draws holdouts and builds providers itself.
TopicResult run_topic(const ExperimentConfig& config, const Corpus& corpus, std::string_view target);

enum class Suite { Table2, Table3, Table4, Fig4 };

std::string_view to_string(Suite suite) noexcept;
Suite parse_suite(std::string_view value);

struct CellSpec {
  std::string variant;
  Setting setting = Setting::ZeroShot;
  Strategy strategy = Strategy::None;
  std::size_t shots = 0;
};

//   table2: zero_shot
//   table3: zero_shot, few_shot(200) x {BT, CWE, TxtGen}
//   table4: few_shot(200) x {none, CWE}
//   fig4:   few_shot(none) x {50, 100, 150, 200}
std::vector<CellSpec> suite_variants(Suite suite);

struct Cell {
  CellSpec spec;
  std::string topic_id;
  std::optional<TopicResult> result;  // empty when the cell failed
  std::string error;
};

struct RunRecord {
  Suite suite = Suite::Table2;
  ExperimentConfig config;
  std::string corpus_hash;
  std::vector<std::string> topic_ids;
  std::vector<Cell> cells;  // variant-major, topics in report order
  std::vector<std::string> warnings;
  double wall_seconds = 0.0;
  std::string version;

  std::size_t failed_cells() const;
  std::size_t skipped_samples() const;
  const Cell* find(std::string_view variant, std::string_view topic_id) const;
};

// Failed cells are recorded and the suite continues.
RunRecord run_suite(Suite suite, const ExperimentConfig& base, const Corpus& corpus);
RunRecord run_suite(Suite suite, const ExperimentConfig& base, const Corpus& corpus, const ProviderSet& providers);

// Throws when a cell's seed or scorer config disagrees with the snapshot.
void validate_run_record(const RunRecord& record);

// run.json. Timing and cache-hit fields live under "runtime" keys.
nlohmann::json to_json(const RunRecord& record);
// cells.csv: one row per cell, no timing fields.
std::string cells_csv(const RunRecord& record);
// report.md
std::string render_report(const RunRecord& record);

// Writes report.md, cells.csv and run.json into `dir`.
void write_outputs(const RunRecord& record, const std::filesystem::path& dir);

}  // namespace claimcheck
