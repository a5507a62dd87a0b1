#include "claimcheck/model.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <unordered_map>

#include <fmt/format.h>

#include "claimcheck/error.hpp"
#include "claimcheck/hashing.hpp"
#include "claimcheck/parallel.hpp"
#include "claimcheck/random.hpp"

namespace claimcheck {

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    const std::size_t start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i > start) tokens.emplace_back(text.substr(start, i - start));
  }
  return tokens;
}

namespace {

std::vector<std::string> feature_tokens(std::string_view text) {
  auto tokens = tokenize(text);
  for (auto& token : tokens) {
    for (auto& c : token) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  std::sort(tokens.begin(), tokens.end());
  tokens.erase(std::unique(tokens.begin(), tokens.end()), tokens.end());
  return tokens;
}

double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

ClassProbabilities softmax2(double logit_ncw, double logit_cw) {
  const double top = std::max(logit_ncw, logit_cw);
  const double e_ncw = std::exp(logit_ncw - top);
  const double e_cw = std::exp(logit_cw - top);
  const double cw = e_cw / (e_cw + e_ncw);
  return {cw, 1.0 - cw};
}

void require_both_classes(std::span<const TrainingExample> examples) {
  bool cw = false;
  bool ncw = false;
  for (const auto& example : examples) (example.label == Label::CW ? cw : ncw) = true;
  if (!cw || !ncw) {
    throw InvalidArgument(fmt::format("train: training set of {} examples holds a single class", examples.size()));
  }
}

}  // namespace

double Scorer::score(std::string_view text) const {
  const std::string owned(text);
  return predict(std::span<const std::string>(&owned, 1)).front().cw;
}

BaselineScorer BaselineScorer::fit(const BaselineHyperparams& params, std::uint64_t seed,
                                   std::span<const TrainingExample> examples) {
  require_both_classes(examples);

  // Canonical example order makes the fit independent of input order.
  std::vector<const TrainingExample*> ordered;
  ordered.reserve(examples.size());
  for (const auto& example : examples) ordered.push_back(&example);
  std::sort(ordered.begin(), ordered.end(), [](const auto* a, const auto* b) {
    if (a->text != b->text) return a->text < b->text;
    if (a->label != b->label) return a->label < b->label;
    return a->id < b->id;
  });

  std::map<std::string, std::size_t, std::less<>> vocabulary;
  std::vector<std::vector<std::string>> documents;
  documents.reserve(ordered.size());
  for (const auto* example : ordered) {
    documents.push_back(feature_tokens(example->text));
    for (const auto& token : documents.back()) vocabulary.emplace(token, 0);
  }
  std::vector<std::string> vocab_tokens;
  vocab_tokens.reserve(vocabulary.size());
  for (auto& [token, index] : vocabulary) {
    index = vocab_tokens.size();
    vocab_tokens.push_back(token);
  }

  struct Row {
    std::vector<std::size_t> features;
    double value = 0.0;  // 1/sqrt(|features|)
    double target = 0.0;
    double weight = 1.0;
  };
  std::size_t cw_count = 0;
  for (const auto* example : ordered) cw_count += example->label == Label::CW;
  const double n = static_cast<double>(ordered.size());
  const double cw_weight = params.balance_classes ? n / (2.0 * static_cast<double>(cw_count)) : 1.0;
  const double ncw_weight = params.balance_classes ? n / (2.0 * (n - static_cast<double>(cw_count))) : 1.0;

  std::vector<Row> rows(ordered.size());
  double total_weight = 0.0;
  for (std::size_t i = 0; i < ordered.size(); ++i) {
    auto& row = rows[i];
    for (const auto& token : documents[i]) row.features.push_back(vocabulary.find(token)->second);
    row.value = row.features.empty() ? 0.0 : 1.0 / std::sqrt(static_cast<double>(row.features.size()));
    row.target = ordered[i]->label == Label::CW ? 1.0 : 0.0;
    row.weight = ordered[i]->label == Label::CW ? cw_weight : ncw_weight;
    total_weight += row.weight;
  }

  std::vector<double> w(vocab_tokens.size());
  for (std::size_t j = 0; j < w.size(); ++j) {
    auto rng = make_rng(seed, "baseline-init/" + vocab_tokens[j]);
    w[j] = params.init_scale * (2.0 * uniform_unit(rng) - 1.0);
  }
  double b = 0.0;

  std::vector<double> gradient(w.size());
  for (std::size_t iteration = 0; iteration < params.iterations; ++iteration) {
    std::fill(gradient.begin(), gradient.end(), 0.0);
    double bias_gradient = 0.0;
    for (const auto& row : rows) {
      double z = b;
      for (auto j : row.features) z += w[j] * row.value;
      const double residual = row.weight * (sigmoid(z) - row.target) / total_weight;
      bias_gradient += residual;
      for (auto j : row.features) gradient[j] += residual * row.value;
    }
    for (std::size_t j = 0; j < w.size(); ++j) w[j] -= params.learning_rate * (gradient[j] + params.l2 * w[j]);
    b -= params.learning_rate * bias_gradient;
  }

  BaselineScorer scorer;
  for (std::size_t j = 0; j < w.size(); ++j) scorer.weights_.emplace(vocab_tokens[j], w[j]);
  scorer.bias_ = b;
  return scorer;
}

BaselineScorer BaselineScorer::from_artifact(const nlohmann::json& artifact) {
  if (artifact.value("backend_id", std::string{}) != kBaselineBackend) {
    throw InvalidArgument("baseline artifact: wrong backend_id");
  }
  BaselineScorer scorer;
  scorer.bias_ = artifact.at("bias").get<double>();
  for (const auto& [token, weight] : artifact.at("weights").items()) scorer.weights_.emplace(token, weight.get<double>());
  return scorer;
}

double BaselineScorer::weight(std::string_view token) const {
  const auto it = weights_.find(token);
  return it == weights_.end() ? 0.0 : it->second;
}

std::vector<ClassProbabilities> BaselineScorer::predict(std::span<const std::string> texts) const {
  std::vector<ClassProbabilities> out;
  out.reserve(texts.size());
  for (const auto& text : texts) {
    const auto tokens = feature_tokens(text);
    const double value = tokens.empty() ? 0.0 : 1.0 / std::sqrt(static_cast<double>(tokens.size()));
    double z = bias_;
    for (const auto& token : tokens) z += weight(token) * value;
    const double cw = sigmoid(z);
    out.push_back({cw, 1.0 - cw});
  }
  return out;
}

nlohmann::json BaselineScorer::artifact() const {
  nlohmann::json weights = nlohmann::json::object();
  for (const auto& [token, weight] : weights_) weights[token] = weight;
  return {{"backend_id", kBaselineBackend}, {"bias", bias_}, {"weights", std::move(weights)}};
}

EncoderClient::EncoderClient(JsonTransport transport, RetryPolicy retry)
    : transport_(std::move(transport)), retry_(retry) {}

namespace {

nlohmann::json hyperparams_json(const EncoderHyperparams& params, std::uint64_t seed) {
  return {{"model", params.model},
          {"epochs", params.epochs},
          {"learning_rate", params.learning_rate},
          {"batch_size", params.batch_size},
          {"max_sequence_length", params.max_sequence_length},
          {"seed", seed}};
}

}  // namespace

std::string EncoderClient::train(std::span<const TrainingExample> examples, const EncoderHyperparams& params,
                                 std::uint64_t seed) const {
  nlohmann::json texts = nlohmann::json::array();
  nlohmann::json labels = nlohmann::json::array();
  for (const auto& example : examples) {
    texts.push_back(example.text);
    labels.push_back(to_string(example.label));
  }
  const nlohmann::json request = {
      {"mode", "train"}, {"texts", std::move(texts)}, {"labels", std::move(labels)}, {"hyperparams", hyperparams_json(params, seed)}};
  const auto response = call_with_retry(transport_, request, retry_, "encoder");
  if (!response.contains("handle") || !response["handle"].is_string()) {
    throw ProviderError("encoder provider: train response lacks a string 'handle'");
  }
  return response["handle"].get<std::string>();
}

std::vector<ClassProbabilities> EncoderClient::score(std::string_view handle, std::span<const std::string> texts,
                                                     const EncoderHyperparams& params) const {
  const std::size_t batch = std::max<std::size_t>(params.score_batch_size, 1);
  const std::size_t batches = (texts.size() + batch - 1) / batch;
  std::vector<std::vector<ClassProbabilities>> parts(batches);
  parallel_for(batches, params.max_parallel, [&](std::size_t b) {
    const auto chunk = texts.subspan(b * batch, std::min(batch, texts.size() - b * batch));
    const nlohmann::json request = {{"mode", "score"},
                                    {"handle", std::string(handle)},
                                    {"texts", std::vector<std::string>(chunk.begin(), chunk.end())},
                                    {"max_sequence_length", params.max_sequence_length}};
    const auto response = call_with_retry(transport_, request, retry_, "encoder");
    const auto& scores = response.contains("scores") ? response["scores"] : nlohmann::json();
    if (!scores.is_array() || scores.size() != chunk.size()) {
      throw ProviderError(fmt::format("encoder provider: expected {} score pairs", chunk.size()));
    }
    std::size_t cw_index = 1;
    if (response.contains("classes")) {
      const auto classes = response["classes"].get<std::vector<std::string>>();
      if (classes.size() != 2) throw ProviderError("encoder provider: 'classes' must list two labels");
      cw_index = parse_label(classes[1]) == Label::CW ? 1 : 0;
    }
    for (const auto& pair : scores) {
      if (!pair.is_array() || pair.size() != 2) throw ProviderError("encoder provider: each score must be a pair");
      const double cw = pair[cw_index].get<double>();
      const double ncw = pair[1 - cw_index].get<double>();
      parts[b].push_back(softmax2(ncw, cw));
    }
  });
  std::vector<ClassProbabilities> out;
  out.reserve(texts.size());
  for (auto& part : parts) out.insert(out.end(), part.begin(), part.end());
  return out;
}

EncoderScorer::EncoderScorer(std::shared_ptr<const EncoderClient> client, std::string handle, EncoderHyperparams params)
    : client_(std::move(client)), handle_(std::move(handle)), params_(std::move(params)) {
  if (!client_) throw ConfigError("encoder backend selected but no encoder provider is configured");
}

std::vector<ClassProbabilities> EncoderScorer::predict(std::span<const std::string> texts) const {
  return client_->score(handle_, texts, params_);
}

nlohmann::json EncoderScorer::artifact() const {
  return {{"backend_id", kEncoderBackend},
          {"handle", handle_},
          {"model", params_.model},
          {"max_sequence_length", params_.max_sequence_length}};
}

std::string ScorerConfig::config_hash() const {
  Sha256 hash;
  hash.field(backend_id).field(std::to_string(seed));
  if (backend_id == kBaselineBackend) {
    hash.field(std::to_string(baseline.iterations))
        .field(fmt::format("{:.17g}", baseline.learning_rate))
        .field(fmt::format("{:.17g}", baseline.l2))
        .field(baseline.balance_classes ? "balanced" : "unweighted")
        .field(fmt::format("{:.17g}", baseline.init_scale));
  } else {
    hash.field(encoder.model)
        .field(std::to_string(encoder.epochs))
        .field(fmt::format("{:.17g}", encoder.learning_rate))
        .field(std::to_string(encoder.batch_size))
        .field(std::to_string(encoder.max_sequence_length));
  }
  return hash.hex_digest();
}

nlohmann::json to_json(const ScorerConfig& config) {
  return {{"backend_id", config.backend_id},
          {"seed", config.seed},
          {"baseline",
           {{"iterations", config.baseline.iterations},
            {"learning_rate", config.baseline.learning_rate},
            {"l2", config.baseline.l2},
            {"balance_classes", config.baseline.balance_classes},
            {"init_scale", config.baseline.init_scale}}},
          {"encoder",
           {{"model", config.encoder.model},
            {"epochs", config.encoder.epochs},
            {"learning_rate", config.encoder.learning_rate},
            {"batch_size", config.encoder.batch_size},
            {"max_sequence_length", config.encoder.max_sequence_length},
            {"score_batch_size", config.encoder.score_batch_size},
            {"max_parallel", config.encoder.max_parallel}}}};
}

ScorerConfig scorer_config_from_json(const nlohmann::json& object, ScorerConfig config) {
  config.backend_id = object.value("backend_id", config.backend_id);
  config.seed = object.value("seed", config.seed);
  if (object.contains("baseline")) {
    const auto& b = object["baseline"];
    config.baseline.iterations = b.value("iterations", config.baseline.iterations);
    config.baseline.learning_rate = b.value("learning_rate", config.baseline.learning_rate);
    config.baseline.l2 = b.value("l2", config.baseline.l2);
    config.baseline.balance_classes = b.value("balance_classes", config.baseline.balance_classes);
    config.baseline.init_scale = b.value("init_scale", config.baseline.init_scale);
  }
  if (object.contains("encoder")) {
    const auto& e = object["encoder"];
    config.encoder.model = e.value("model", config.encoder.model);
    config.encoder.epochs = e.value("epochs", config.encoder.epochs);
    config.encoder.learning_rate = e.value("learning_rate", config.encoder.learning_rate);
    config.encoder.batch_size = e.value("batch_size", config.encoder.batch_size);
    config.encoder.max_sequence_length = e.value("max_sequence_length", config.encoder.max_sequence_length);
    config.encoder.score_batch_size = e.value("score_batch_size", config.encoder.score_batch_size);
    config.encoder.max_parallel = e.value("max_parallel", config.encoder.max_parallel);
  }
  if (config.backend_id != kBaselineBackend && config.backend_id != kEncoderBackend) {
    throw ConfigError(fmt::format("unknown backend '{}' (expected baseline or encoder)", config.backend_id));
  }
  if (config.baseline.learning_rate <= 0 || config.encoder.learning_rate <= 0) {
    throw ConfigError("learning rates must be positive");
  }
  return config;
}

std::unique_ptr<Scorer> train(const ScorerConfig& config, std::span<const TrainingExample> examples,
                              std::shared_ptr<const EncoderClient> encoder) {
  if (config.backend_id == kBaselineBackend) {
    return std::make_unique<BaselineScorer>(BaselineScorer::fit(config.baseline, config.seed, examples));
  }
  if (config.backend_id == kEncoderBackend) {
    if (!encoder) throw ConfigError("encoder backend selected but no encoder provider is configured");
    require_both_classes(examples);
    auto handle = encoder->train(examples, config.encoder, config.seed);
    return std::make_unique<EncoderScorer>(std::move(encoder), std::move(handle), config.encoder);
  }
  throw ConfigError(fmt::format("unknown backend '{}'", config.backend_id));
}

std::string training_data_hash(std::span<const TrainingExample> examples) {
  std::vector<const TrainingExample*> ordered;
  ordered.reserve(examples.size());
  for (const auto& example : examples) ordered.push_back(&example);
  std::sort(ordered.begin(), ordered.end(), [](const auto* a, const auto* b) {
    if (a->id != b->id) return a->id < b->id;
    if (a->text != b->text) return a->text < b->text;
    return a->label < b->label;
  });
  Sha256 hash;
  for (const auto* example : ordered) hash.field(example->id).field(example->text).field(to_string(example->label));
  return hash.hex_digest();
}

std::unique_ptr<Scorer> train_cached(const ScorerConfig& config, std::span<const TrainingExample> examples,
                                     const ArtifactCache& cache, std::shared_ptr<const EncoderClient> encoder,
                                     bool* cache_hit) {
  const auto key = Sha256{}
                       .field(config.backend_id)
                       .field(training_data_hash(examples))
                       .field(config.config_hash())
                       .hex_digest();
  if (auto artifact = cache.load("models", key)) {
    if (cache_hit) *cache_hit = true;
    return load_scorer(*artifact, std::move(encoder));
  }
  if (cache_hit) *cache_hit = false;
  auto scorer = train(config, examples, encoder);
  cache.store("models", key, scorer->artifact());
  return scorer;
}

std::unique_ptr<Scorer> load_scorer(const nlohmann::json& artifact, std::shared_ptr<const EncoderClient> encoder) {
  const auto backend = artifact.value("backend_id", std::string{});
  if (backend == kBaselineBackend) return std::make_unique<BaselineScorer>(BaselineScorer::from_artifact(artifact));
  if (backend == kEncoderBackend) {
    EncoderHyperparams params;
    params.model = artifact.value("model", params.model);
    params.max_sequence_length = artifact.value("max_sequence_length", params.max_sequence_length);
    return std::make_unique<EncoderScorer>(std::move(encoder), artifact.at("handle").get<std::string>(), params);
  }
  throw InvalidArgument(fmt::format("model artifact has unknown backend_id '{}'", backend));
}

ScoredRanking rank(const Scorer& scorer, std::span<const TextItem> items, std::string target_topic_id) {
  std::vector<std::string> texts;
  texts.reserve(items.size());
  for (const auto& item : items) texts.push_back(item.text);
  const auto probabilities = scorer.predict(texts);
  if (probabilities.size() != items.size()) {
    throw ProviderError(fmt::format("scorer returned {} scores for {} texts", probabilities.size(), items.size()));
  }
  std::vector<RankedEntry> entries;
  entries.reserve(items.size());
  for (std::size_t i = 0; i < items.size(); ++i) entries.push_back({items[i].id, probabilities[i].cw});
  return make_ranking(std::move(target_topic_id), std::move(entries));
}

Label classify(double score, double threshold) {
  if (!(score >= 0.0 && score <= 1.0)) throw InvalidArgument(fmt::format("classify: score {} outside [0, 1]", score));
  return score >= threshold ? Label::CW : Label::NCW;
}

}  // namespace claimcheck
