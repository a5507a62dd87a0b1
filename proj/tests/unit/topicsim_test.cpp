#include <cmath>
#include <memory>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "claimcheck/error.hpp"
#include "claimcheck/mock_providers.hpp"
#include "claimcheck/random.hpp"
#include "claimcheck/synthetic.hpp"
#include "claimcheck/topicsim.hpp"

using namespace claimcheck;

TEST(Cosine, KnownValues) {
  const Vector a = {1, 0, 0}, b = {0, 1, 0}, c = {2, 0, 0}, d = {-1, 0, 0}, e = {1, 1, 0};
  EXPECT_DOUBLE_EQ(cosine_similarity(a, b), 0.0);
  EXPECT_DOUBLE_EQ(cosine_similarity(a, c), 1.0);
  EXPECT_DOUBLE_EQ(cosine_similarity(a, d), -1.0);
  EXPECT_NEAR(cosine_similarity(a, e), 1.0 / std::sqrt(2.0), 1e-15);
}

TEST(TopicEmbedding, IsMeanOfVectors) {
  const mock::LookupEmbedder embedder({{"x", {1, 2}}, {"y", {3, 6}}});
  const std::vector<std::string> texts = {"x", "y"};
  EXPECT_EQ(topic_embedding(texts, embedder), (Vector{2, 4}));
  EXPECT_THROW(topic_embedding(std::vector<std::string>{}, embedder), Error);
  const mock::LookupEmbedder ragged({{"x", {1, 2}}, {"y", {3}}});
  EXPECT_THROW(topic_embedding(texts, ragged), Error);
}

TEST(SimilarityMatrix, OrthogonalTopicsGiveIdentity) {
  const std::vector<std::string> ids = {"A", "B", "C"};
  const std::vector<Vector> vectors = {{1, 0, 0}, {0, 2, 0}, {0, 0, 3}};
  const auto m = similarity_matrix(ids, vectors);
  ASSERT_EQ(m.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) EXPECT_DOUBLE_EQ(m.at(i, j), i == j ? 1.0 : 0.0);
  }
}

TEST(SimilarityMatrix, ZeroNormNamesTopic) {
  const std::vector<std::string> ids = {"A", "B"};
  const std::vector<Vector> vectors = {{1, 0}, {0, 0}};
  try {
    similarity_matrix(ids, vectors);
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("B"), std::string::npos);
  }
}

TEST(SimilarityMatrix, SymmetricBoundedAndScaleInvariant) {
  auto rng = make_rng(3, "topicsim/random");
  std::vector<std::string> ids;
  std::vector<Vector> vectors, scaled;
  for (int t = 0; t < 6; ++t) {
    ids.push_back("T" + std::to_string(t));
    Vector v(16);
    for (auto& x : v) x = uniform_unit(rng) - 0.5;
    vectors.push_back(v);
    for (auto& x : v) x *= 7.5;
    scaled.push_back(v);
  }
  const auto m = similarity_matrix(ids, vectors);
  const auto s = similarity_matrix(ids, scaled);
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) {
      EXPECT_EQ(m.at(i, j), m.at(j, i));
      EXPECT_LE(std::abs(m.at(i, j)), 1.0);
      EXPECT_NEAR(m.at(i, j), s.at(i, j), 1e-12);
    }
  }
}

TEST(DifficultyRanking, AscendingMeanOffDiagonalTiesById) {
  SimilarityMatrix m;
  m.topic_ids = {"C", "A", "B"};
  m.values = {{1, 0.2, 0.2}, {0.2, 1, 0.8}, {0.2, 0.8, 1}};
  const auto ranking = difficulty_ranking(m);
  ASSERT_EQ(ranking.size(), 3u);
  EXPECT_EQ(ranking[0].first, "C");
  EXPECT_DOUBLE_EQ(ranking[0].second, 0.2);
  EXPECT_EQ(ranking[1].first, "A");
  EXPECT_EQ(ranking[2].first, "B");
}

TEST(SimilarityMatrix, FromCorpusWithHashingEmbedder) {
  SyntheticSpec spec;
  spec.topics = 4;
  spec.tweets_per_topic = 40;
  const auto corpus = synthetic_corpus(spec);
  const auto m = similarity_matrix(corpus, HashingEmbedder{});
  EXPECT_EQ(m.topic_ids, corpus.topic_ids());
  for (std::size_t i = 0; i < m.size(); ++i) EXPECT_NEAR(m.at(i, i), 1.0, 1e-9);
  const auto csv = to_csv(m);
  EXPECT_EQ(csv.substr(0, 8), "topic_id");
  const auto json = to_json(m);
  EXPECT_TRUE(json.contains("difficulty_ranking"));
}

TEST(JsonEmbedder, BatchesRequests) {
  int calls = 0;
  JsonTransport transport = [&](const nlohmann::json& request) -> nlohmann::json {
    ++calls;
    nlohmann::json vectors = nlohmann::json::array();
    for (const auto& text : request.at("texts")) vectors.push_back({static_cast<double>(text.get<std::string>().size()), 1.0});
    return {{"vectors", vectors}};
  };
  const JsonEmbedder embedder(transport, {}, 2);
  const std::vector<std::string> texts = {"a", "bb", "ccc", "dddd", "eeeee"};
  const auto out = embedder.embed(texts);
  EXPECT_EQ(calls, 3);
  ASSERT_EQ(out.size(), 5u);
  EXPECT_EQ(out[4], (Vector{5.0, 1.0}));
}

TEST(HashingEmbedder, DeterministicAndFixedDimension) {
  const HashingEmbedder embedder(64);
  const std::vector<std::string> texts = {"some words here", "some words here", ""};
  const auto out = embedder.embed(texts);
  ASSERT_EQ(out.size(), 3u);
  EXPECT_EQ(out[0].size(), 64u);
  EXPECT_EQ(out[0], out[1]);
}
