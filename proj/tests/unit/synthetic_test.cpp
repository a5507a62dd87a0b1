#include <algorithm>
#include <set>
#include <string>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "claimcheck/error.hpp"
#include "claimcheck/synthetic.hpp"

using namespace claimcheck;

TEST(Synthetic, DeterministicPerSeed) {
  SyntheticSpec spec;
  spec.topics = 3;
  spec.tweets_per_topic = 50;
  const auto a = synthetic_records(spec);
  const auto b = synthetic_records(spec);
  ASSERT_EQ(a.size(), 150u);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].text, b[i].text);
  spec.seed = 1;
  const auto c = synthetic_records(spec);
  std::size_t same = 0;
  for (std::size_t i = 0; i < a.size(); ++i) same += a[i].text == c[i].text;
  EXPECT_LT(same, 5u);
}

TEST(Synthetic, ShapeFollowsSpec) {
  SyntheticSpec spec;
  spec.topics = 2;
  spec.tweets_per_topic = 100;
  spec.cw_fraction = 0.25;
  spec.noise_rate = 0.0;
  const auto corpus = synthetic_corpus(spec);
  EXPECT_EQ(corpus.topic_ids(), (std::vector<std::string>{"CT20-AR-01", "CT20-AR-02"}));
  std::set<std::string> ids;
  for (const auto& topic : corpus.topic_ids()) {
    std::size_t cw = 0;
    for (const auto* r : corpus.records_of(topic)) {
      cw += r->label == Label::CW;
      const auto words = std::count(r->text.begin(), r->text.end(), ' ') + 1;
      EXPECT_GE(words, 8);
      EXPECT_LE(words, 16);
      EXPECT_TRUE(ids.insert(r->tweet_id).second);
    }
    EXPECT_EQ(cw, 25u);
  }
}

TEST(Synthetic, RejectsBadSpecs) {
  SyntheticSpec spec;
  spec.topics = 15;
  EXPECT_THROW(synthetic_records(spec), InvalidArgument);
  spec.topics = 0;
  EXPECT_THROW(synthetic_records(spec), InvalidArgument);
}

TEST(Synthetic, JsonRoundTrip) {
  SyntheticSpec spec;
  spec.seed = 4;
  spec.shared_cw_rate = 0.2;
  const auto back = synthetic_spec_from_json(to_json(spec));
  EXPECT_EQ(back.seed, 4u);
  EXPECT_EQ(back.shared_cw_rate, 0.2);
  EXPECT_THROW(synthetic_spec_from_json({{"vocab", 3}}), ConfigError);
}
