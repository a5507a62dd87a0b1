#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "claimcheck/cache.hpp"
#include "claimcheck/error.hpp"
#include "claimcheck/mock_providers.hpp"
#include "claimcheck/model.hpp"

using namespace claimcheck;

namespace {

std::vector<TrainingExample> toy_examples() {
  std::vector<TrainingExample> out;
  for (int i = 0; i < 20; ++i) {
    out.push_back({"cw" + std::to_string(i), "claim number " + std::to_string(i % 5) + " official", Label::CW});
    out.push_back({"ncw" + std::to_string(i), "chatter about weather " + std::to_string(i % 3), Label::NCW});
  }
  return out;
}

}  // namespace

TEST(Tokenize, SplitsOnWhitespace) {
  EXPECT_EQ(tokenize("  a  b\tc\n"), (std::vector<std::string>{"a", "b", "c"}));
  EXPECT_TRUE(tokenize("   ").empty());
}

TEST(Classify, ThresholdIsInclusive) {
  EXPECT_EQ(classify(0.5), Label::CW);
  EXPECT_EQ(classify(0.49), Label::NCW);
  EXPECT_EQ(classify(0.7, 0.8), Label::NCW);
  EXPECT_THROW(classify(1.2), Error);
  EXPECT_THROW(classify(-0.1), Error);
}

TEST(Baseline, LearnsSeparableData) {
  const auto examples = toy_examples();
  const auto scorer = BaselineScorer::fit({}, 1, examples);
  EXPECT_GT(scorer.score("claim official"), 0.5);
  EXPECT_LT(scorer.score("weather chatter"), 0.5);
  EXPECT_GT(scorer.weight("official"), 0.0);
  EXPECT_LT(scorer.weight("weather"), 0.0);
  EXPECT_EQ(scorer.weight("unseen"), 0.0);
}

TEST(Baseline, ProbabilitiesSumToOne) {
  const auto scorer = BaselineScorer::fit({}, 1, toy_examples());
  const std::vector<std::string> texts = {"claim", "weather", "", "mixed claim weather"};
  for (const auto& p : scorer.predict(texts)) {
    EXPECT_NEAR(p.cw + p.ncw, 1.0, 1e-12);
    EXPECT_GE(p.cw, 0.0);
    EXPECT_LE(p.cw, 1.0);
  }
}

TEST(Baseline, TrainingIsOrderIndependentAndSeeded) {
  auto examples = toy_examples();
  const auto a = BaselineScorer::fit({}, 3, examples);
  std::reverse(examples.begin(), examples.end());
  const auto b = BaselineScorer::fit({}, 3, examples);
  EXPECT_EQ(a.artifact(), b.artifact());
  const auto c = BaselineScorer::fit({}, 4, examples);
  EXPECT_NE(a.artifact(), c.artifact());
}

TEST(Baseline, ArtifactRoundTrip) {
  const auto scorer = BaselineScorer::fit({}, 1, toy_examples());
  const auto restored = load_scorer(scorer.artifact());
  EXPECT_EQ(restored->backend_id(), kBaselineBackend);
  EXPECT_DOUBLE_EQ(restored->score("claim official 2"), scorer.score("claim official 2"));
}

TEST(Train, SingleClassIsRejected) {
  std::vector<TrainingExample> one = {{"1", "a", Label::CW}, {"2", "b", Label::CW}};
  EXPECT_THROW(train({}, one), InvalidArgument);
}

TEST(Train, EncoderWithoutProviderIsConfigError) {
  ScorerConfig config;
  config.backend_id = std::string(kEncoderBackend);
  EXPECT_THROW(train(config, toy_examples()), ConfigError);
}

TEST(Train, EncoderBackendThroughMockTransport) {
  ScorerConfig config;
  config.backend_id = std::string(kEncoderBackend);
  auto client = std::make_shared<EncoderClient>(mock::encoder_transport());
  const auto scorer = train(config, toy_examples(), client);
  EXPECT_EQ(scorer->backend_id(), kEncoderBackend);
  EXPECT_GT(scorer->score("claim official"), scorer->score("weather chatter"));
  const auto restored = load_scorer(scorer->artifact(), client);
  EXPECT_DOUBLE_EQ(restored->score("claim 1"), scorer->score("claim 1"));
}

TEST(EncoderClient, ScoresAreSoftmaxOfLogits) {
  JsonTransport transport = [](const nlohmann::json& request) -> nlohmann::json {
    if (request.at("mode") == "train") return {{"handle", "h"}};
    nlohmann::json scores = nlohmann::json::array();
    for (std::size_t i = 0; i < request.at("texts").size(); ++i) scores.push_back({0.0, std::log(3.0)});
    return {{"scores", scores}};
  };
  EncoderClient client(transport);
  const std::vector<std::string> texts = {"a", "b"};
  const auto probs = client.score("h", texts, {});
  ASSERT_EQ(probs.size(), 2u);
  EXPECT_NEAR(probs[0].cw, 0.75, 1e-12);
  EXPECT_NEAR(probs[0].ncw, 0.25, 1e-12);
}

TEST(EncoderClient, BadResponseIsProviderError) {
  JsonTransport transport = [](const nlohmann::json&) -> nlohmann::json { return {{"scores", {{1.0}}}}; };
  EncoderClient client(transport, {1, std::chrono::milliseconds(0)});
  const std::vector<std::string> texts = {"a"};
  EXPECT_THROW(client.score("h", texts, {}), ProviderError);
}

TEST(TrainCached, SecondCallHitsCache) {
  const auto dir = std::filesystem::temp_directory_path() / ("cc-model-" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()));
  std::filesystem::remove_all(dir);
  const ArtifactCache cache(dir);
  bool hit = true;
  const auto first = train_cached({}, toy_examples(), cache, nullptr, &hit);
  EXPECT_FALSE(hit);
  const auto second = train_cached({}, toy_examples(), cache, nullptr, &hit);
  EXPECT_TRUE(hit);
  EXPECT_EQ(first->artifact(), second->artifact());
  ScorerConfig other;
  other.seed = 99;
  train_cached(other, toy_examples(), cache, nullptr, &hit);
  EXPECT_FALSE(hit);
  std::filesystem::remove_all(dir);
}

TEST(TrainingDataHash, OrderInsensitiveContentSensitive) {
  auto examples = toy_examples();
  const auto h = training_data_hash(examples);
  std::reverse(examples.begin(), examples.end());
  EXPECT_EQ(training_data_hash(examples), h);
  examples[0].label = examples[0].label == Label::CW ? Label::NCW : Label::CW;
  EXPECT_NE(training_data_hash(examples), h);
}

TEST(Rank, ProducesSortedRankingOverItems) {
  const auto scorer = BaselineScorer::fit({}, 1, toy_examples());
  const std::vector<TextItem> items = {{"x", "weather"}, {"y", "claim official"}, {"z", "claim"}};
  const auto ranking = rank(scorer, items, "T");
  ASSERT_EQ(ranking.entries.size(), 3u);
  EXPECT_EQ(ranking.entries.front().tweet_id, "y");
  EXPECT_EQ(ranking.entries.back().tweet_id, "x");
  EXPECT_EQ(ranking.target_topic_id, "T");
}

TEST(ScorerConfig, JsonRoundTripAndValidation) {
  ScorerConfig config;
  config.seed = 5;
  config.encoder.epochs = 4;
  const auto back = scorer_config_from_json(to_json(config));
  EXPECT_EQ(back.config_hash(), config.config_hash());
  EXPECT_THROW(scorer_config_from_json({{"backend_id", "svm"}}), ConfigError);
  EXPECT_EQ(config.encoder.epochs, 4u);
  EXPECT_EQ(ScorerConfig{}.encoder.max_sequence_length, 128u);
  EXPECT_EQ(ScorerConfig{}.encoder.batch_size, 32u);
  EXPECT_EQ(ScorerConfig{}.encoder.epochs, 3u);
}
