#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "claimcheck/error.hpp"
#include "claimcheck/splits.hpp"
#include "claimcheck/synthetic.hpp"

using namespace claimcheck;

namespace {

Corpus small_corpus(std::size_t topics = 4, std::size_t per_topic = 260) {
  SyntheticSpec spec;
  spec.seed = 2;
  spec.topics = topics;
  spec.tweets_per_topic = per_topic;
  return synthetic_corpus(spec);
}

std::size_t cw_count(const Corpus& corpus, const std::vector<std::string>& ids) {
  return static_cast<std::size_t>(
      std::count_if(ids.begin(), ids.end(), [&](const auto& id) { return corpus.at(id).label == Label::CW; }));
}

}  // namespace

TEST(Holdouts, StratifiedBySourceRate) {
  const auto corpus = small_corpus();
  const auto holdouts = make_holdouts(corpus, 5);
  for (const auto& topic : corpus.topic_ids()) {
    const auto& pool = holdouts.pool(topic);
    ASSERT_EQ(pool.size(), 200u);
    std::vector<std::string> all;
    for (const auto* r : corpus.records_of(topic)) all.push_back(r->tweet_id);
    const double rate = static_cast<double>(cw_count(corpus, all)) / static_cast<double>(all.size());
    const auto expected = static_cast<std::size_t>(std::floor(rate * 200 + 0.5));
    EXPECT_EQ(cw_count(corpus, pool), expected) << topic;
    for (const auto& id : pool) EXPECT_EQ(corpus.at(id).topic_id, topic);
  }
  EXPECT_TRUE(holdouts.warnings.empty());
}

TEST(Holdouts, DeterministicPerSeed) {
  const auto corpus = small_corpus();
  const auto a = make_holdouts(corpus, 5);
  const auto b = make_holdouts(corpus, 5);
  const auto c = make_holdouts(corpus, 6);
  EXPECT_EQ(a.per_topic, b.per_topic);
  EXPECT_NE(a.per_topic, c.per_topic);
}

TEST(Holdouts, SmallTopicTakesEverythingAndWarns) {
  const auto corpus = small_corpus(2, 150);
  const auto holdouts = make_holdouts(corpus, 1);
  EXPECT_EQ(holdouts.pool("CT20-AR-01").size(), 150u);
  EXPECT_FALSE(holdouts.warnings.empty());
}

TEST(Splits, ZeroShotExcludesTargetFromTraining) {
  const auto corpus = small_corpus();
  const auto holdouts = make_holdouts(corpus, 5);
  const auto split = zero_shot_split(corpus, holdouts, "CT20-AR-05");
  EXPECT_EQ(split.setting(), Setting::ZeroShot);
  for (const auto& id : split.train) EXPECT_NE(corpus.at(id).topic_id, "CT20-AR-05");
  EXPECT_EQ(split.train.size(), 3u * 260u);
  EXPECT_EQ(split.test.size(), 60u);
  EXPECT_TRUE(std::is_sorted(split.train.begin(), split.train.end()));
  EXPECT_THROW(zero_shot_split(corpus, holdouts, "CT21-AR-02"), Error);
}

TEST(Splits, FewShotAddsPrefixOfPoolAndKeepsTestSet) {
  const auto corpus = small_corpus();
  const auto holdouts = make_holdouts(corpus, 5);
  const auto zero = zero_shot_split(corpus, holdouts, "CT20-AR-02");
  std::vector<std::string> previous;
  for (auto shots : kShotSweep) {
    const auto few = few_shot_split(corpus, holdouts, "CT20-AR-02", shots);
    EXPECT_EQ(few.test, zero.test);
    EXPECT_EQ(few.test_hash(), zero.test_hash());
    EXPECT_EQ(few.train.size(), zero.train.size() + shots);
    ASSERT_EQ(few.few_shot.size(), shots);
    EXPECT_TRUE(std::equal(previous.begin(), previous.end(), few.few_shot.begin()));
    const std::set<std::string> train(few.train.begin(), few.train.end());
    for (const auto& id : few.test) EXPECT_FALSE(train.contains(id));
    previous = few.few_shot;
  }
  EXPECT_EQ(few_shot_split(corpus, holdouts, "CT20-AR-02", 0).train, zero.train);
  EXPECT_THROW(few_shot_split(corpus, holdouts, "CT20-AR-02", 201), Error);
}

TEST(Splits, JsonRoundTrip) {
  const auto corpus = small_corpus();
  const auto holdouts = make_holdouts(corpus, 5);
  const auto split = few_shot_split(corpus, holdouts, "CT20-AR-08", 50);
  const auto json = to_json(split);
  EXPECT_EQ(json.at("setting"), "few_shot");
  EXPECT_EQ(json.at("test_hash"), split.test_hash());
  const auto back = split_from_json(json);
  EXPECT_EQ(back.train, split.train);
  EXPECT_EQ(back.test, split.test);
  EXPECT_EQ(back.few_shot, split.few_shot);
  EXPECT_EQ(back.shots, 50u);
}

TEST(Settings, ParseNames) {
  EXPECT_EQ(parse_setting("zero_shot"), Setting::ZeroShot);
  EXPECT_EQ(parse_setting("few-shot"), Setting::FewShot);
  EXPECT_THROW(parse_setting("one_shot"), Error);
}
