#include "claimcheck/topicsim.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "claimcheck/error.hpp"
#include "claimcheck/hashing.hpp"
#include "claimcheck/model.hpp"

namespace claimcheck {

JsonEmbedder::JsonEmbedder(JsonTransport transport, RetryPolicy retry, std::size_t batch_size)
    : transport_(std::move(transport)), retry_(retry), batch_size_(std::max<std::size_t>(batch_size, 1)) {}

std::vector<Vector> JsonEmbedder::embed(std::span<const std::string> texts) const {
  std::vector<Vector> out;
  out.reserve(texts.size());
  for (std::size_t start = 0; start < texts.size(); start += batch_size_) {
    const auto chunk = texts.subspan(start, std::min(batch_size_, texts.size() - start));
    const nlohmann::json request = {{"texts", std::vector<std::string>(chunk.begin(), chunk.end())}};
    const auto response = call_with_retry(transport_, request, retry_, "embedder");
    if (!response.contains("vectors") || !response["vectors"].is_array() || response["vectors"].size() != chunk.size()) {
      throw ProviderError(fmt::format("embedder: expected {} vectors", chunk.size()));
    }
    for (const auto& vector : response["vectors"]) out.push_back(vector.get<Vector>());
  }
  return out;
}

std::vector<Vector> HashingEmbedder::embed(std::span<const std::string> texts) const {
  std::vector<Vector> out;
  out.reserve(texts.size());
  for (const auto& text : texts) {
    Vector v(dimensions_, 0.0);
    for (const auto& token : tokenize(text)) {
      const auto h = fnv1a64(token);
      v[h % dimensions_] += (h >> 63) ? -1.0 : 1.0;
    }
    out.push_back(std::move(v));
  }
  return out;
}

Vector topic_embedding(std::span<const std::string> texts, const Embedder& embedder) {
  if (texts.empty()) throw InvalidArgument("topic_embedding: empty topic");
  const auto vectors = embedder.embed(texts);
  if (vectors.size() != texts.size()) {
    throw ProviderError(fmt::format("embedder returned {} vectors for {} texts", vectors.size(), texts.size()));
  }
  const std::size_t dim = vectors.front().size();
  if (dim == 0) throw ProviderError("embedder returned zero-dimension vectors");
  Vector mean(dim, 0.0);
  for (const auto& v : vectors) {
    if (v.size() != dim) {
      throw InvalidArgument(fmt::format("topic_embedding: dimension mismatch ({} vs {})", v.size(), dim));
    }
    for (std::size_t k = 0; k < dim; ++k) mean[k] += v[k];
  }
  for (auto& x : mean) x /= static_cast<double>(vectors.size());
  return mean;
}

namespace {

double norm(std::span<const double> v) {
  double sum = 0.0;
  for (double x : v) sum += x * x;
  return std::sqrt(sum);
}

}  // namespace

double cosine_similarity(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw InvalidArgument("cosine_similarity: dimension mismatch");
  const double na = norm(a);
  const double nb = norm(b);
  if (na == 0.0 || nb == 0.0) throw InvalidArgument("cosine_similarity: zero-norm vector");
  double dot = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) dot += (a[k] / na) * (b[k] / nb);
  return std::clamp(dot, -1.0, 1.0);
}

SimilarityMatrix similarity_matrix(std::span<const std::string> topic_ids, std::span<const Vector> embeddings) {
  if (topic_ids.size() != embeddings.size()) throw InvalidArgument("similarity_matrix: ids/embeddings length mismatch");
  for (std::size_t i = 0; i < embeddings.size(); ++i) {
    if (norm(embeddings[i]) == 0.0) {
      throw InvalidArgument(fmt::format("similarity_matrix: topic {} has a zero-norm embedding", topic_ids[i]));
    }
  }
  SimilarityMatrix matrix;
  matrix.topic_ids.assign(topic_ids.begin(), topic_ids.end());
  const std::size_t n = topic_ids.size();
  matrix.values.assign(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    matrix.values[i][i] = cosine_similarity(embeddings[i], embeddings[i]);
    for (std::size_t j = i + 1; j < n; ++j) {
      matrix.values[i][j] = matrix.values[j][i] = cosine_similarity(embeddings[i], embeddings[j]);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(matrix.values[i][i] - 1.0) > 1e-9) {
      throw Error(fmt::format("similarity_matrix: diagonal entry for {} is {}", topic_ids[i], matrix.values[i][i]));
    }
  }
  return matrix;
}

SimilarityMatrix similarity_matrix(const Corpus& corpus, const Embedder& embedder) {
  std::vector<Vector> embeddings;
  for (const auto& topic : corpus.topic_ids()) {
    std::vector<std::string> texts;
    for (const auto* record : corpus.records_of(topic)) texts.push_back(record->text);
    embeddings.push_back(topic_embedding(texts, embedder));
  }
  return similarity_matrix(corpus.topic_ids(), embeddings);
}

std::vector<std::pair<std::string, double>> difficulty_ranking(const SimilarityMatrix& matrix) {
  const std::size_t n = matrix.size();
  std::vector<std::pair<std::string, double>> out;
  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) sum += matrix.values[i][j];
    }
    out.emplace_back(matrix.topic_ids[i], n > 1 ? sum / static_cast<double>(n - 1) : 0.0);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second < b.second;
    return a.first < b.first;
  });
  return out;
}

std::string to_csv(const SimilarityMatrix& matrix) {
  std::string out = "topic_id";
  for (const auto& id : matrix.topic_ids) out += "," + id;
  out += "\n";
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    out += matrix.topic_ids[i];
    for (std::size_t j = 0; j < matrix.size(); ++j) out += fmt::format(",{:.6f}", matrix.values[i][j]);
    out += "\n";
  }
  return out;
}

nlohmann::json to_json(const SimilarityMatrix& matrix) {
  nlohmann::json ranking = nlohmann::json::array();
  for (const auto& [topic, mean] : difficulty_ranking(matrix)) ranking.push_back({{"topic_id", topic}, {"mean_similarity", mean}});
  return {{"topic_ids", matrix.topic_ids},
          {"values", matrix.values},
          {"difficulty_ranking", std::move(ranking)},
          {"recipe", {{"tweet_embedding", "provider-supplied (mean-pooled token vectors)"},
                      {"topic_embedding", "mean over normalized tweet texts"},
                      {"similarity", "cosine"}}}};
}

}  // namespace claimcheck
