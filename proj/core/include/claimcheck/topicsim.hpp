#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "claimcheck/corpus.hpp"
#include "claimcheck/providers.hpp"

namespace claimcheck {

using Vector = std::vector<double>;

// Maps a text to a fixed-dimension vector (e.g. mean-pooled final-layer token
// vectors of a contextual encoder). Must be safe to call concurrently.
class Embedder {
 public:
  virtual ~Embedder() = default;
  virtual std::vector<Vector> embed(std::span<const std::string> texts) const = 0;
};

// {"texts":[..]} -> {"vectors":[[..],..]}
class JsonEmbedder final : public Embedder {
 public:
  JsonEmbedder(JsonTransport transport, RetryPolicy retry = {}, std::size_t batch_size = 128);
  std::vector<Vector> embed(std::span<const std::string> texts) const override;

 private:
  JsonTransport transport_;
  RetryPolicy retry_;
  std::size_t batch_size_;
};

// Feature-hashed bag of words; deterministic and dependency-free.
class HashingEmbedder final : public Embedder {
 public:
  explicit HashingEmbedder(std::size_t dimensions = 256) : dimensions_(dimensions) {}
  std::vector<Vector> embed(std::span<const std::string> texts) const override;

 private:
  std::size_t dimensions_;
};

// Arithmetic mean of the per-text vectors.
Vector topic_embedding(std::span<const std::string> texts, const Embedder& embedder);

double cosine_similarity(std::span<const double> a, std::span<const double> b);

struct SimilarityMatrix {
  std::vector<std::string> topic_ids;
  std::vector<std::vector<double>> values;

  double at(std::size_t i, std::size_t j) const { return values[i][j]; }
  std::size_t size() const noexcept { return topic_ids.size(); }
};

// Cosine similarity of every pair of topic embeddings. Throws on a zero-norm
// embedding, naming the topic. Symmetry and unit diagonal are asserted.
SimilarityMatrix similarity_matrix(std::span<const std::string> topic_ids, std::span<const Vector> embeddings);

// Embeds every corpus topic (in report order) and builds the matrix.
SimilarityMatrix similarity_matrix(const Corpus& corpus, const Embedder& embedder);

// Topics by ascending mean off-diagonal similarity; ties by topic_id.
std::vector<std::pair<std::string, double>> difficulty_ranking(const SimilarityMatrix& matrix);

std::string to_csv(const SimilarityMatrix& matrix);
nlohmann::json to_json(const SimilarityMatrix& matrix);

}  // namespace claimcheck
