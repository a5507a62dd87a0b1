#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "claimcheck/cache.hpp"
#include "claimcheck/corpus.hpp"
#include "claimcheck/evaluation.hpp"
#include "claimcheck/providers.hpp"

namespace claimcheck {

inline constexpr std::string_view kBaselineBackend = "baseline";
inline constexpr std::string_view kEncoderBackend = "encoder";

struct TextItem {
  std::string id;
  std::string text;
};

struct TrainingExample {
  std::string id;
  std::string text;
  Label label = Label::NCW;

  bool operator==(const TrainingExample&) const = default;
};

// Normalized two-class output: cw + ncw == 1.
struct ClassProbabilities {
  double cw = 0.0;
  double ncw = 1.0;
};

// Bag-of-words logistic regression, full-batch gradient descent.
struct BaselineHyperparams {
  std::size_t iterations = 300;
  double learning_rate = 1.0;
  double l2 = 1e-4;
  bool balance_classes = true;
  double init_scale = 0.01;  // seeded uniform(-s, s) initial weights
};

// Forwarded to the encoder provider; none of these are fixed by the method.
struct EncoderHyperparams {
  std::string model = "aubmindlab/bert-base-arabertv02";
  std::size_t epochs = 3;
  double learning_rate = 2e-5;
  std::size_t batch_size = 32;
  std::size_t max_sequence_length = 128;
  std::size_t score_batch_size = 256;
  std::size_t max_parallel = 1;
};

struct ScorerConfig {
  std::string backend_id = std::string(kBaselineBackend);
  std::uint64_t seed = 0;
  BaselineHyperparams baseline;
  EncoderHyperparams encoder;

  // Hash of the fields relevant to the selected backend.
  std::string config_hash() const;
};

nlohmann::json to_json(const ScorerConfig& config);
ScorerConfig scorer_config_from_json(const nlohmann::json& object, ScorerConfig defaults = {});

// A fitted check-worthiness scorer. Read-only after construction; predict may
// be called from several threads.
class Scorer {
 public:
  virtual ~Scorer() = default;
  virtual std::string_view backend_id() const = 0;
  virtual std::vector<ClassProbabilities> predict(std::span<const std::string> texts) const = 0;
  // Serializable artifact from which load_scorer rebuilds the scorer.
  virtual nlohmann::json artifact() const = 0;

  // P(CW) for one text.
  double score(std::string_view text) const;
};

class BaselineScorer final : public Scorer {
 public:
  static BaselineScorer fit(const BaselineHyperparams& params, std::uint64_t seed,
                            std::span<const TrainingExample> examples);
  static BaselineScorer from_artifact(const nlohmann::json& artifact);

  std::string_view backend_id() const override { return kBaselineBackend; }
  std::vector<ClassProbabilities> predict(std::span<const std::string> texts) const override;
  nlohmann::json artifact() const override;

  double weight(std::string_view token) const;
  double bias() const noexcept { return bias_; }

 private:
  std::map<std::string, double, std::less<>> weights_;
  double bias_ = 0.0;
};

// Client for the encoder fine-tuning provider.
//   train request:  {"mode":"train","texts":[..],"labels":["CW"|"NCW",..],"hyperparams":{..}}
//   train response: {"handle":"<id>"}
//   score request:  {"mode":"score","handle":"<id>","texts":[..]}
//   score response: {"scores":[[logit_ncw, logit_cw],..]} (order overridable by "classes")
// Logits are normalized locally with a softmax.
class EncoderClient {
 public:
  EncoderClient(JsonTransport transport, RetryPolicy retry = {});

  std::string train(std::span<const TrainingExample> examples, const EncoderHyperparams& params,
                    std::uint64_t seed) const;
  std::vector<ClassProbabilities> score(std::string_view handle, std::span<const std::string> texts,
                                        const EncoderHyperparams& params) const;

 private:
  JsonTransport transport_;
  RetryPolicy retry_;
};

class EncoderScorer final : public Scorer {
 public:
  EncoderScorer(std::shared_ptr<const EncoderClient> client, std::string handle, EncoderHyperparams params);

  std::string_view backend_id() const override { return kEncoderBackend; }
  std::vector<ClassProbabilities> predict(std::span<const std::string> texts) const override;
  nlohmann::json artifact() const override;
  const std::string& handle() const noexcept { return handle_; }

 private:
  std::shared_ptr<const EncoderClient> client_;
  std::string handle_;
  EncoderHyperparams params_;
};

// Throws InvalidArgument when the examples hold a single class, ConfigError
// when the encoder backend is selected without a client.
std::unique_ptr<Scorer> train(const ScorerConfig& config, std::span<const TrainingExample> examples,
                              std::shared_ptr<const EncoderClient> encoder = nullptr);

// Order-insensitive hash of (id, text, label) triples.
std::string training_data_hash(std::span<const TrainingExample> examples);

// train() behind the content-addressed cache keyed by
// (backend_id, training_data_hash, config_hash).
std::unique_ptr<Scorer> train_cached(const ScorerConfig& config, std::span<const TrainingExample> examples,
                                     const ArtifactCache& cache, std::shared_ptr<const EncoderClient> encoder = nullptr,
                                     bool* cache_hit = nullptr);

std::unique_ptr<Scorer> load_scorer(const nlohmann::json& artifact,
                                    std::shared_ptr<const EncoderClient> encoder = nullptr);

ScoredRanking rank(const Scorer& scorer, std::span<const TextItem> items, std::string target_topic_id = {});

// CW iff score >= threshold. Throws on scores outside [0, 1].
Label classify(double score, double threshold = 0.5);

std::vector<std::string> tokenize(std::string_view text);

}  // namespace claimcheck
