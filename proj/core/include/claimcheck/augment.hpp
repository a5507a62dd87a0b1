#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "claimcheck/cache.hpp"
#include "claimcheck/corpus.hpp"
#include "claimcheck/model.hpp"
#include "claimcheck/providers.hpp"

namespace claimcheck {

enum class Strategy { None, BT, CWE, TxtGen };

std::string_view to_string(Strategy strategy) noexcept;
Strategy parse_strategy(std::string_view value);

struct GenerationParams {
  std::size_t num_beams = 5;
  std::size_t max_length = 200;
  double top_p = 0.75;
  double repetition_penalty = 3.0;
  std::size_t no_repeat_ngram_size = 3;

  bool operator==(const GenerationParams&) const = default;
};

nlohmann::json to_json(const GenerationParams& params);
GenerationParams generation_params_from_json(const nlohmann::json& object, GenerationParams defaults = {});

struct AugmentedSample {
  std::string origin_tweet_id;
  std::string text;
  Label label = Label::NCW;
  Strategy strategy = Strategy::None;

  // Id of the synthetic training example: "<origin>#<strategy>".
  std::string synthetic_id() const;
  bool operator==(const AugmentedSample&) const = default;
};

struct SkippedSample {
  std::string origin_tweet_id;
  std::string error;
};

struct AugmentOutcome {
  std::vector<AugmentedSample> samples;  // in seed order
  std::vector<SkippedSample> skipped;
  std::size_t identical_to_origin = 0;   // kept, only counted
};

// Provider interfaces. Implementations must be safe to call concurrently and
// signal failure by throwing (any exception skips the sample).
class Translator {
 public:
  virtual ~Translator() = default;
  virtual std::string translate(std::string_view text, std::string_view source_lang,
                                std::string_view target_lang) const = 0;
};

// Receives text whose chosen words are replaced by mask_token and returns it
// with every mask filled by one word.
class MaskFiller {
 public:
  virtual ~MaskFiller() = default;
  virtual std::string fill(std::string_view masked_text, std::string_view mask_token) const = 0;
};

class TextGenerator {
 public:
  virtual ~TextGenerator() = default;
  virtual std::string generate(std::string_view prompt, const GenerationParams& params) const = 0;
};

// JSON providers.
//   translator: {"text","source","target"} -> {"text"}
//   filler:     {"text","mask_token"} -> {"text"}
//   generator:  {"prompt","params":{num_beams,max_length,top_p,repetition_penalty,no_repeat_ngram_size}} -> {"text"}
class JsonTranslator final : public Translator {
 public:
  JsonTranslator(JsonTransport transport, RetryPolicy retry = {});
  std::string translate(std::string_view text, std::string_view source_lang, std::string_view target_lang) const override;

 private:
  JsonTransport transport_;
  RetryPolicy retry_;
};

class JsonMaskFiller final : public MaskFiller {
 public:
  JsonMaskFiller(JsonTransport transport, RetryPolicy retry = {});
  std::string fill(std::string_view masked_text, std::string_view mask_token) const override;

 private:
  JsonTransport transport_;
  RetryPolicy retry_;
};

class JsonTextGenerator final : public TextGenerator {
 public:
  JsonTextGenerator(JsonTransport transport, RetryPolicy retry = {});
  std::string generate(std::string_view prompt, const GenerationParams& params) const override;

 private:
  JsonTransport transport_;
  RetryPolicy retry_;
};

struct BackTranslationOptions {
  std::string source_lang = "ar";
  std::string pivot_lang = "en";
  std::size_t max_parallel = 1;
};

// text -> pivot -> source, one sample per seed; failures are skipped.
AugmentOutcome back_translate(std::span<const TrainingExample> seeds, const Translator& translator,
                              const BackTranslationOptions& options = {});

inline constexpr std::string_view kMaskToken = "[MASK]";

struct SubstitutionOptions {
  double ratio = 0.3;
  std::uint64_t seed = 0;
  std::string mask_token = std::string(kMaskToken);
  std::size_t max_parallel = 1;
};

// Number of words substituted in a text with `eligible` non-placeholder words:
// round-half-up(ratio * eligible), capped at eligible.
std::size_t substitution_count(std::size_t eligible, double ratio);

// Positions (indices into the whitespace token list) chosen for one sample.
std::vector<std::size_t> substitution_positions(std::span<const std::string> tokens, double ratio, std::uint64_t seed,
                                                std::string_view origin_id);

// Replaces round(ratio * n) seed-chosen words (placeholders excluded) through
// the filler. The filled text must keep the word count.
AugmentOutcome contextual_substitute(std::span<const TrainingExample> seeds, const MaskFiller& filler,
                                     const SubstitutionOptions& options = {});

struct GenerationOptions {
  GenerationParams params;
  std::size_t max_parallel = 1;
};

// Prompts the generator with each seed's full text; output truncated to
// params.max_length words.
AugmentOutcome generate_samples(std::span<const TrainingExample> seeds, const TextGenerator& generator,
                                const GenerationOptions& options = {});

struct AugmentProviders {
  std::shared_ptr<const Translator> translator;
  std::shared_ptr<const MaskFiller> filler;
  std::shared_ptr<const TextGenerator> generator;
};

struct AugmentSettings {
  std::uint64_t seed = 0;
  GenerationParams generation;
  double substitution_ratio = 0.3;
  std::string pivot_lang = "en";
  std::size_t max_parallel = 1;
};

struct AugmentedTrainSet {
  std::vector<TrainingExample> examples;  // train set followed by synthetic samples
  AugmentOutcome outcome;
  bool cache_hit = false;
};

// Augments only the few-shot pool seeds and appends the synthetic samples to
// the train set. `few_shot_pool` must be a subset of `train_set` (by id).
// Outcomes with skipped samples are not cached, so a rerun retries them.
// Strategy::None returns the train set unchanged.
AugmentedTrainSet augment_training(std::span<const TrainingExample> train_set,
                                   std::span<const TrainingExample> few_shot_pool, Strategy strategy,
                                   const AugmentProviders& providers, const AugmentSettings& settings,
                                   const ArtifactCache& cache = {});

nlohmann::json to_json(const AugmentedSample& sample);
AugmentedSample augmented_sample_from_json(const nlohmann::json& object);
nlohmann::json to_json(const AugmentOutcome& outcome);
AugmentOutcome augment_outcome_from_json(const nlohmann::json& object);

}  // namespace claimcheck
