#include "claimcheck/augment.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_set>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "claimcheck/error.hpp"
#include "claimcheck/hashing.hpp"
#include "claimcheck/parallel.hpp"
#include "claimcheck/preprocess.hpp"
#include "claimcheck/random.hpp"

namespace claimcheck {

std::string_view to_string(Strategy strategy) noexcept {
  switch (strategy) {
    case Strategy::None: return "none";
    case Strategy::BT: return "BT";
    case Strategy::CWE: return "CWE";
    case Strategy::TxtGen: return "TxtGen";
  }
  return "none";
}

Strategy parse_strategy(std::string_view value) {
  std::string key(value);
  std::transform(key.begin(), key.end(), key.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (key == "none") return Strategy::None;
  if (key == "bt") return Strategy::BT;
  if (key == "cwe") return Strategy::CWE;
  if (key == "txtgen") return Strategy::TxtGen;
  throw InvalidArgument(fmt::format("unknown augmentation strategy '{}' (expected none, BT, CWE or TxtGen)", value));
}

nlohmann::json to_json(const GenerationParams& params) {
  return {{"num_beams", params.num_beams},
          {"max_length", params.max_length},
          {"top_p", params.top_p},
          {"repetition_penalty", params.repetition_penalty},
          {"no_repeat_ngram_size", params.no_repeat_ngram_size}};
}

GenerationParams generation_params_from_json(const nlohmann::json& object, GenerationParams params) {
  static const std::set<std::string, std::less<>> known = {"num_beams", "max_length", "top_p", "repetition_penalty",
                                                           "no_repeat_ngram_size"};
  for (const auto& [key, value] : object.items()) {
    if (!known.contains(key)) throw ConfigError(fmt::format("unknown generation parameter '{}'", key));
  }
  params.num_beams = object.value("num_beams", params.num_beams);
  params.max_length = object.value("max_length", params.max_length);
  params.top_p = object.value("top_p", params.top_p);
  params.repetition_penalty = object.value("repetition_penalty", params.repetition_penalty);
  params.no_repeat_ngram_size = object.value("no_repeat_ngram_size", params.no_repeat_ngram_size);
  return params;
}

std::string AugmentedSample::synthetic_id() const { return fmt::format("{}#{}", origin_tweet_id, to_string(strategy)); }

JsonTranslator::JsonTranslator(JsonTransport transport, RetryPolicy retry)
    : transport_(std::move(transport)), retry_(retry) {}

std::string JsonTranslator::translate(std::string_view text, std::string_view source_lang,
                                      std::string_view target_lang) const {
  const nlohmann::json request = {{"text", text}, {"source", source_lang}, {"target", target_lang}};
  const auto response = call_with_retry(transport_, request, retry_, "translator");
  if (!response.contains("text") || !response["text"].is_string()) throw ProviderError("translator response lacks 'text'");
  return response["text"].get<std::string>();
}

JsonMaskFiller::JsonMaskFiller(JsonTransport transport, RetryPolicy retry)
    : transport_(std::move(transport)), retry_(retry) {}

std::string JsonMaskFiller::fill(std::string_view masked_text, std::string_view mask_token) const {
  const nlohmann::json request = {{"text", masked_text}, {"mask_token", mask_token}};
  const auto response = call_with_retry(transport_, request, retry_, "mask filler");
  if (!response.contains("text") || !response["text"].is_string()) throw ProviderError("mask filler response lacks 'text'");
  return response["text"].get<std::string>();
}

JsonTextGenerator::JsonTextGenerator(JsonTransport transport, RetryPolicy retry)
    : transport_(std::move(transport)), retry_(retry) {}

std::string JsonTextGenerator::generate(std::string_view prompt, const GenerationParams& params) const {
  const nlohmann::json request = {{"prompt", prompt}, {"params", to_json(params)}};
  const auto response = call_with_retry(transport_, request, retry_, "generator");
  if (!response.contains("text") || !response["text"].is_string()) throw ProviderError("generator response lacks 'text'");
  return response["text"].get<std::string>();
}

namespace {

std::string join(std::span<const std::string> tokens) {
  std::string out;
  for (const auto& token : tokens) {
    if (!out.empty()) out.push_back(' ');
    out += token;
  }
  return out;
}

// Runs make(seed) for every seed with bounded parallelism and assembles the
// outcome in seed order.
template <typename Make>
AugmentOutcome run_per_seed(std::span<const TrainingExample> seeds, Strategy strategy, std::size_t max_parallel,
                            Make&& make) {
  struct Slot {
    std::optional<std::string> text;
    std::string error;
  };
  std::vector<Slot> slots(seeds.size());
  parallel_for(seeds.size(), max_parallel, [&](std::size_t i) {
    try {
      slots[i].text = make(seeds[i]);
    } catch (const std::exception& e) {
      slots[i].error = e.what();
    }
  });

  AugmentOutcome outcome;
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    if (!slots[i].text) {
      outcome.skipped.push_back({seeds[i].id, slots[i].error});
      continue;
    }
    if (*slots[i].text == seeds[i].text) ++outcome.identical_to_origin;
    outcome.samples.push_back({seeds[i].id, std::move(*slots[i].text), seeds[i].label, strategy});
  }
  return outcome;
}

}  // namespace

AugmentOutcome back_translate(std::span<const TrainingExample> seeds, const Translator& translator,
                              const BackTranslationOptions& options) {
  return run_per_seed(seeds, Strategy::BT, options.max_parallel, [&](const TrainingExample& seed) {
    const auto pivot = translator.translate(seed.text, options.source_lang, options.pivot_lang);
    return translator.translate(pivot, options.pivot_lang, options.source_lang);
  });
}

std::size_t substitution_count(std::size_t eligible, double ratio) {
  if (!(ratio > 0.0 && ratio <= 1.0)) throw InvalidArgument(fmt::format("substitution ratio {} outside (0, 1]", ratio));
  // Snap to 1e-9 so 0.7 * 45 = 31.499999999999996 still reads as 31.5.
  const double exact = std::round(ratio * static_cast<double>(eligible) * 1e9) / 1e9;
  return std::min(eligible, static_cast<std::size_t>(std::floor(exact + 0.5)));
}

std::vector<std::size_t> substitution_positions(std::span<const std::string> tokens, double ratio, std::uint64_t seed,
                                                std::string_view origin_id) {
  std::vector<std::size_t> eligible;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (!is_placeholder(tokens[i])) eligible.push_back(i);
  }
  const std::size_t count = substitution_count(eligible.size(), ratio);
  auto rng = make_rng(seed, fmt::format("cwe/{}", origin_id));
  // Partial Fisher-Yates: the first `count` slots become a uniform sample.
  for (std::size_t i = 0; i < count; ++i) {
    const auto j = i + static_cast<std::size_t>(uniform_below(rng, eligible.size() - i));
    std::swap(eligible[i], eligible[j]);
  }
  eligible.resize(count);
  std::sort(eligible.begin(), eligible.end());
  return eligible;
}

AugmentOutcome contextual_substitute(std::span<const TrainingExample> seeds, const MaskFiller& filler,
                                     const SubstitutionOptions& options) {
  substitution_count(0, options.ratio);  // validates the ratio before any provider call
  return run_per_seed(seeds, Strategy::CWE, options.max_parallel, [&](const TrainingExample& seed) {
    auto tokens = tokenize(seed.text);
    const auto positions = substitution_positions(tokens, options.ratio, options.seed, seed.id);
    if (positions.empty()) return join(tokens);
    for (auto position : positions) tokens[position] = options.mask_token;
    const auto filled = tokenize(filler.fill(join(tokens), options.mask_token));
    if (filled.size() != tokens.size()) {
      throw ProviderError(fmt::format("mask filler changed the word count from {} to {}", tokens.size(), filled.size()));
    }
    // Only the masked positions take the filler's words.
    auto out = tokenize(seed.text);
    for (auto position : positions) out[position] = filled[position];
    return join(out);
  });
}

AugmentOutcome generate_samples(std::span<const TrainingExample> seeds, const TextGenerator& generator,
                                const GenerationOptions& options) {
  return run_per_seed(seeds, Strategy::TxtGen, options.max_parallel, [&](const TrainingExample& seed) {
    auto tokens = tokenize(generator.generate(seed.text, options.params));
    if (tokens.empty()) throw ProviderError("generator returned empty text");
    if (tokens.size() > options.params.max_length) tokens.resize(options.params.max_length);
    return join(tokens);
  });
}

AugmentedTrainSet augment_training(std::span<const TrainingExample> train_set,
                                   std::span<const TrainingExample> few_shot_pool, Strategy strategy,
                                   const AugmentProviders& providers, const AugmentSettings& settings,
                                   const ArtifactCache& cache) {
  AugmentedTrainSet result;
  result.examples.assign(train_set.begin(), train_set.end());
  if (strategy == Strategy::None) return result;

  std::unordered_set<std::string_view> train_ids;
  for (const auto& example : train_set) train_ids.insert(example.id);
  for (const auto& seed : few_shot_pool) {
    if (!train_ids.contains(seed.id)) {
      throw InvalidArgument(fmt::format("augment_training: pool sample {} is not in the train set", seed.id));
    }
  }

  const bool provider_missing = (strategy == Strategy::BT && !providers.translator) ||
                                (strategy == Strategy::CWE && !providers.filler) ||
                                (strategy == Strategy::TxtGen && !providers.generator);
  if (provider_missing) {
    throw ConfigError(fmt::format("augmentation strategy {} selected without its provider", to_string(strategy)));
  }

  Sha256 params_hash;
  params_hash.field(nlohmann::json(to_json(settings.generation)).dump())
      .field(fmt::format("{:.17g}", settings.substitution_ratio))
      .field(settings.pivot_lang);
  const auto key = Sha256{}
                       .field(to_string(strategy))
                       .field(params_hash.hex_digest())
                       .field(training_data_hash(few_shot_pool))
                       .field(std::to_string(settings.seed))
                       .hex_digest();

  if (auto cached = cache.load("augment", key)) {
    result.outcome = augment_outcome_from_json(*cached);
    result.cache_hit = true;
  } else {
    switch (strategy) {
      case Strategy::BT:
        result.outcome = back_translate(few_shot_pool, *providers.translator,
                                        {.source_lang = "ar", .pivot_lang = settings.pivot_lang, .max_parallel = settings.max_parallel});
        break;
      case Strategy::CWE:
        result.outcome = contextual_substitute(
            few_shot_pool, *providers.filler,
            {.ratio = settings.substitution_ratio, .seed = settings.seed, .mask_token = std::string(kMaskToken), .max_parallel = settings.max_parallel});
        break;
      case Strategy::TxtGen:
        result.outcome = generate_samples(few_shot_pool, *providers.generator,
                                          {.params = settings.generation, .max_parallel = settings.max_parallel});
        break;
      case Strategy::None:
        break;
    }
    if (result.outcome.skipped.empty()) cache.store("augment", key, to_json(result.outcome));
  }

  for (const auto& sample : result.outcome.samples) {
    result.examples.push_back({sample.synthetic_id(), sample.text, sample.label});
  }
  return result;
}

nlohmann::json to_json(const AugmentedSample& sample) {
  return {{"origin_tweet_id", sample.origin_tweet_id},
          {"text", sample.text},
          {"label", to_string(sample.label)},
          {"strategy", to_string(sample.strategy)}};
}

AugmentedSample augmented_sample_from_json(const nlohmann::json& object) {
  return {object.at("origin_tweet_id").get<std::string>(), object.at("text").get<std::string>(),
          parse_label(object.at("label").get<std::string>()), parse_strategy(object.at("strategy").get<std::string>())};
}

nlohmann::json to_json(const AugmentOutcome& outcome) {
  nlohmann::json samples = nlohmann::json::array();
  for (const auto& sample : outcome.samples) samples.push_back(to_json(sample));
  nlohmann::json skipped = nlohmann::json::array();
  for (const auto& skip : outcome.skipped) skipped.push_back({{"origin_tweet_id", skip.origin_tweet_id}, {"error", skip.error}});
  return {{"samples", std::move(samples)}, {"skipped", std::move(skipped)}, {"identical_to_origin", outcome.identical_to_origin}};
}

AugmentOutcome augment_outcome_from_json(const nlohmann::json& object) {
  AugmentOutcome outcome;
  for (const auto& sample : object.at("samples")) outcome.samples.push_back(augmented_sample_from_json(sample));
  for (const auto& skip : object.at("skipped")) {
    outcome.skipped.push_back({skip.at("origin_tweet_id").get<std::string>(), skip.at("error").get<std::string>()});
  }
  outcome.identical_to_origin = object.value("identical_to_origin", std::size_t{0});
  return outcome;
}

}  // namespace claimcheck
