#include <filesystem>
#include <fstream>
#include <iostream>
#include <list>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "claimcheck/augment.hpp"
#include "claimcheck/corpus.hpp"
#include "claimcheck/evaluation.hpp"
#include "claimcheck/model.hpp"
#include "claimcheck/runner.hpp"
#include "claimcheck/splits.hpp"
#include "claimcheck/synthetic.hpp"
#include "claimcheck/topicsim.hpp"

namespace fs = std::filesystem;
using namespace claimcheck;
using nlohmann::json;

namespace {

struct Common {
  std::string config_file;
  std::uint64_t seed = 0;
  std::string backend;
  std::size_t shots = 0;
  std::string strategy;
  std::string out = "out";
  std::size_t jobs = 1;
  std::string cache_dir;

  CLI::Option* seed_opt = nullptr;
  CLI::Option* backend_opt = nullptr;
  CLI::Option* shots_opt = nullptr;
  CLI::Option* strategy_opt = nullptr;
  CLI::Option* out_opt = nullptr;
  CLI::Option* jobs_opt = nullptr;
  CLI::Option* cache_opt = nullptr;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--config", c.config_file, "JSON experiment config; flags override it")->check(CLI::ExistingFile);
  c.seed_opt = cmd->add_option("--seed", c.seed, "master seed");
  c.backend_opt = cmd->add_option("--backend", c.backend, "scorer backend: baseline | encoder");
  c.shots_opt = cmd->add_option("--shots", c.shots, "target-topic samples added (0 = zero-shot)");
  c.strategy_opt = cmd->add_option("--strategy", c.strategy, "augmentation: none | BT | CWE | TxtGen");
  c.out_opt = cmd->add_option("--out", c.out, "output directory");
  c.jobs_opt = cmd->add_option("--jobs", c.jobs, "parallel cells");
  c.cache_opt = cmd->add_option("--cache-dir", c.cache_dir, "artifact cache (default <out>/cache)");
}

ExperimentConfig resolve(const Common& c) {
  ExperimentConfig config = c.config_file.empty() ? ExperimentConfig{} : load_experiment_config(c.config_file);
  if (c.seed_opt->count()) config.seed = c.seed;
  if (c.backend_opt->count()) config.backend_id = c.backend;
  if (c.shots_opt->count()) {
    config.shots = c.shots;
    config.setting = c.shots == 0 ? Setting::ZeroShot : Setting::FewShot;
  }
  if (c.strategy_opt->count()) config.strategy = parse_strategy(c.strategy);
  if (c.out_opt->count() || c.config_file.empty()) config.output_dir = c.out;
  if (c.jobs_opt->count()) config.jobs = c.jobs;
  if (c.cache_opt->count()) config.cache_dir = c.cache_dir;
  return config;
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(fmt::format("cannot open {}", path));
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(fmt::format("{}: {}", path, e.what()));
  }
}

void write_json(const fs::path& path, const json& value) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(fmt::format("cannot write {}", path.string()));
  out << value.dump(2) << "\n";
}

void write_text(const fs::path& path, const std::string& value) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(fmt::format("cannot write {}", path.string()));
  out << value;
}

std::vector<TrainingExample> examples_of(const Corpus& corpus, const std::vector<std::string>& ids) {
  std::vector<TrainingExample> out;
  for (const auto& id : ids) {
    const auto& r = corpus.at(id);
    out.push_back({r.tweet_id, r.text, r.label});
  }
  return out;
}

AugmentSettings augment_settings(const ExperimentConfig& config) {
  AugmentSettings s;
  s.seed = config.seed;
  s.generation = config.generation_params;
  s.substitution_ratio = config.substitution_ratio;
  s.pivot_lang = config.pivot_lang;
  s.max_parallel = config.providers.max_parallel;
  return s;
}

ArtifactCache cache_for(const ExperimentConfig& config, const ProviderSet& providers) {
  return ArtifactCache(config.effective_cache_dir() / providers.tag);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cross-topic check-worthy claim detection"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(tool_version()));

  std::list<Common> commons;
  std::map<const CLI::App*, Common*> common_of;
  auto common_for = [&](CLI::App* cmd) {
    auto& c = commons.emplace_back();
    common_of[cmd] = &c;
    add_common(cmd, c);
  };

  // load
  std::vector<std::string> ct20_files, ct21_files;
  std::string header_mode = "auto";
  bool no_merge = false;
  auto* load = app.add_subcommand("load", "Load CT20/CT21 TSV files into a canonical JSON-lines corpus");
  load->add_option("--ct20", ct20_files, "CT20 TSV files")->check(CLI::ExistingFile);
  load->add_option("--ct21", ct21_files, "CT21 TSV files")->check(CLI::ExistingFile);
  load->add_option("--header", header_mode, "header row: auto (preset) | yes | no")
      ->check(CLI::IsMember({"auto", "yes", "no"}));
  load->add_flag("--no-merge", no_merge, "keep the four COVID source topics separate");
  common_for(load);

  // synth
  SyntheticSpec synth_spec;
  auto* synth = app.add_subcommand("synth", "Write a deterministic synthetic corpus");
  synth->add_option("--topics", synth_spec.topics, "number of canonical topics")->check(CLI::Range(1, 14));
  synth->add_option("--tweets-per-topic", synth_spec.tweets_per_topic);
  synth->add_option("--cw-fraction", synth_spec.cw_fraction);
  synth->add_option("--signal-rate", synth_spec.signal_rate);
  synth->add_option("--shared-cw-rate", synth_spec.shared_cw_rate);
  common_for(synth);

  // normalize
  std::string corpus_path;
  auto* normalize = app.add_subcommand("normalize", "Normalize tweet texts, keeping originals as raw_text");
  normalize->add_option("--corpus", corpus_path, "JSON-lines corpus")->required()->check(CLI::ExistingFile);
  common_for(normalize);

  // split
  std::string target;
  auto* split = app.add_subcommand("split", "Build one leave-one-topic-out split");
  split->add_option("--corpus", corpus_path)->required()->check(CLI::ExistingFile);
  split->add_option("--target", target, "held-out topic id")->required();
  common_for(split);

  // train
  std::string split_path;
  auto* train_cmd = app.add_subcommand("train", "Train a scorer on a split's training set");
  train_cmd->add_option("--corpus", corpus_path)->required()->check(CLI::ExistingFile);
  train_cmd->add_option("--split", split_path, "split.json")->required()->check(CLI::ExistingFile);
  common_for(train_cmd);

  // rank
  std::string model_path;
  auto* rank_cmd = app.add_subcommand("rank", "Rank a split's test set with a trained scorer");
  rank_cmd->add_option("--corpus", corpus_path)->required()->check(CLI::ExistingFile);
  rank_cmd->add_option("--split", split_path)->required()->check(CLI::ExistingFile);
  rank_cmd->add_option("--model", model_path, "model.json")->required()->check(CLI::ExistingFile);
  common_for(rank_cmd);

  // eval
  std::string ranking_path;
  bool cw_only = false;
  double threshold = 0.5;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a ranking against gold labels");
  eval_cmd->add_option("--corpus", corpus_path)->required()->check(CLI::ExistingFile);
  eval_cmd->add_option("--ranking", ranking_path, "ranking.json")->required()->check(CLI::ExistingFile);
  eval_cmd->add_flag("--cw-only", cw_only, "MAP = AP of the CW class only");
  eval_cmd->add_option("--threshold", threshold, "CW decision threshold")->check(CLI::Range(0.0, 1.0));
  common_for(eval_cmd);

  // augment
  auto* augment_cmd = app.add_subcommand("augment", "Augment a split's few-shot pool");
  augment_cmd->add_option("--corpus", corpus_path)->required()->check(CLI::ExistingFile);
  augment_cmd->add_option("--split", split_path)->required()->check(CLI::ExistingFile);
  common_for(augment_cmd);

  // similarity
  auto* similarity_cmd = app.add_subcommand("similarity", "Topic-to-topic cosine similarity matrix");
  similarity_cmd->add_option("--corpus", corpus_path)->required()->check(CLI::ExistingFile);
  common_for(similarity_cmd);

  // suite
  std::string suite_name;
  auto* suite_cmd = app.add_subcommand("suite", "Run an experiment suite over every topic");
  suite_cmd->add_option("name", suite_name, "table2 | table3 | table4 | fig4")
      ->required()
      ->check(CLI::IsMember({"table2", "table3", "table4", "fig4"}));
  suite_cmd->add_option("--corpus", corpus_path)->required()->check(CLI::ExistingFile);
  common_for(suite_cmd);

  CLI11_PARSE(app, argc, argv);

  try {
    const Common& common = *common_of.at(app.get_subcommands().front());
    const auto config = resolve(common);
    const fs::path out = config.output_dir;

    if (load->parsed()) {
      if (ct20_files.empty() && ct21_files.empty()) throw ConfigError("load: give at least one --ct20 or --ct21 file");
      std::vector<std::vector<TweetRecord>> batches;
      auto read_all = [&](const std::vector<std::string>& files, TsvSchema schema) {
        if (header_mode != "auto") schema.has_header = header_mode == "yes";
        std::vector<TweetRecord> batch;
        for (const auto& file : files) {
          auto records = load_tsv(file, schema);
          batch.insert(batch.end(), std::make_move_iterator(records.begin()), std::make_move_iterator(records.end()));
        }
        batches.push_back(std::move(batch));
      };
      if (!ct20_files.empty()) read_all(ct20_files, TsvSchema::ct20());
      if (!ct21_files.empty()) read_all(ct21_files, TsvSchema::ct21());
      auto combined = combine_sources(batches);
      auto records = no_merge ? std::move(combined.records)
                              : merge_covid_topics(std::move(combined.records), default_merge_table());
      const Corpus corpus(std::move(records));
      auto stats = to_json(corpus_stats(corpus));
      stats["overlapping_removed"] = combined.overlapping_removed;
      save_jsonl(out / "corpus.jsonl", corpus.records());
      write_json(out / "stats.json", stats);
      std::cout << stats.dump(2) << "\n";
      return 0;
    }

    if (synth->parsed()) {
      if (common.seed_opt->count() || !common.config_file.empty()) synth_spec.seed = config.seed;
      const auto corpus = synthetic_corpus(synth_spec);
      save_jsonl(out / "corpus.jsonl", corpus.records());
      write_json(out / "synthetic.json", to_json(synth_spec));
      std::cerr << fmt::format("wrote {} records to {}\n", corpus.size(), (out / "corpus.jsonl").string());
      return 0;
    }

    const Corpus corpus(load_jsonl(corpus_path));

    if (normalize->parsed()) {
      const auto normalized = normalize_corpus(corpus);
      save_jsonl(out / "corpus.jsonl", normalized.records());
      std::cerr << fmt::format("normalized {} records into {}\n", normalized.size(), (out / "corpus.jsonl").string());
      return 0;
    }

    if (split->parsed()) {
      config.validate();
      const auto holdouts = make_holdouts(corpus, config.seed, config.holdout_size);
      const auto s = config.shots == 0 ? zero_shot_split(corpus, holdouts, target)
                                       : few_shot_split(corpus, holdouts, target, config.shots);
      write_json(out / "split.json", to_json(s));
      write_json(out / "holdouts.json", to_json(holdouts));
      for (const auto& w : holdouts.warnings) std::cerr << "warning: " << w << "\n";
      std::cerr << fmt::format("{}: train {} test {} few-shot {}\n", s.target, s.train.size(), s.test.size(),
                               s.few_shot.size());
      return 0;
    }

    if (train_cmd->parsed()) {
      const auto s = split_from_json(read_json(split_path));
      const auto providers = make_providers(config.providers);
      const auto cache = cache_for(config, providers);
      auto examples = examples_of(corpus, s.train);
      json info = {{"target", s.target}, {"n_train", examples.size()}};
      if (config.strategy != Strategy::None) {
        auto augmented = augment_training(examples, examples_of(corpus, s.few_shot), config.strategy,
                                          providers.augment, augment_settings(config), cache);
        info["n_synthetic"] = augmented.outcome.samples.size();
        info["n_skipped"] = augmented.outcome.skipped.size();
        examples = std::move(augmented.examples);
      }
      bool hit = false;
      const auto scorer = train_cached(config.scorer_config(), examples, cache, providers.encoder, &hit);
      write_json(out / "model.json", scorer->artifact());
      info["cache_hit"] = hit;
      std::cout << info.dump(2) << "\n";
      return 0;
    }

    if (rank_cmd->parsed()) {
      const auto s = split_from_json(read_json(split_path));
      const auto providers = make_providers(config.providers);
      const auto scorer = load_scorer(read_json(model_path), providers.encoder);
      std::vector<TextItem> items;
      for (const auto& id : s.test) items.push_back({id, corpus.at(id).text});
      const auto ranking = rank(*scorer, items, s.target);
      json entries = json::array();
      for (const auto& e : ranking.entries) entries.push_back({{"tweet_id", e.tweet_id}, {"score", e.score}});
      write_json(out / "ranking.json", {{"target_topic_id", ranking.target_topic_id}, {"entries", entries}});
      return 0;
    }

    if (eval_cmd->parsed()) {
      const auto ranking = read_json(ranking_path);
      ScoreMap scores;
      LabelMap labels;
      for (const auto& e : ranking.at("entries")) {
        const auto id = e.at("tweet_id").get<std::string>();
        scores.emplace(id, e.at("score").get<double>());
        labels.emplace(id, corpus.at(id).label);
      }
      const auto mode = cw_only ? MapMode::CwOnly : config.map_mode;
      const auto report = evaluate(ranking.value("target_topic_id", std::string{}), scores, labels, threshold, mode);
      write_json(out / "eval.json", to_json(report));
      std::cout << to_json(report).dump(2) << "\n";
      return 0;
    }

    if (augment_cmd->parsed()) {
      if (config.strategy == Strategy::None) throw ConfigError("augment: choose --strategy BT, CWE or TxtGen");
      const auto s = split_from_json(read_json(split_path));
      const auto providers = make_providers(config.providers);
      const auto augmented = augment_training(examples_of(corpus, s.train), examples_of(corpus, s.few_shot),
                                              config.strategy, providers.augment, augment_settings(config),
                                              cache_for(config, providers));
      write_json(out / "augmented.json", to_json(augmented.outcome));
      std::cerr << fmt::format("{} synthetic, {} skipped, {} identical to origin\n", augmented.outcome.samples.size(),
                               augmented.outcome.skipped.size(), augmented.outcome.identical_to_origin);
      return 0;
    }

    if (similarity_cmd->parsed()) {
      const auto providers = make_providers(config.providers);
      const Corpus prepared = config.normalize ? normalize_corpus(corpus) : corpus;
      const auto matrix = similarity_matrix(prepared, *providers.embedder);
      write_text(out / "similarity.csv", to_csv(matrix));
      write_json(out / "similarity.json", to_json(matrix));
      std::cout << to_csv(matrix);
      return 0;
    }

    if (suite_cmd->parsed()) {
      const auto record = run_suite(parse_suite(suite_name), config, corpus);
      validate_run_record(record);
      write_outputs(record, out);
      std::cout << render_report(record);
      if (record.failed_cells() > 0) {
        std::cerr << fmt::format("{} of {} cells failed\n", record.failed_cells(), record.cells.size());
        return 1;
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "claimcheck: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
