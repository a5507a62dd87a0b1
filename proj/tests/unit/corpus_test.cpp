#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "claimcheck/corpus.hpp"
#include "claimcheck/error.hpp"

using namespace claimcheck;

namespace {

TweetRecord record(std::string id, std::string topic, Label label, Source source = Source::CT20) {
  return {std::move(id), std::move(topic), "نص " + id, label, source, std::nullopt};
}

}  // namespace

TEST(Labels, ParseAcceptedSpellings) {
  for (const char* cw : {"1", "CW", "cw", " checkworthy ", "CheckWorthy"}) EXPECT_EQ(parse_label(cw), Label::CW) << cw;
  for (const char* ncw : {"0", "NCW", " ncw"}) EXPECT_EQ(parse_label(ncw), Label::NCW) << ncw;
  EXPECT_FALSE(try_parse_label("2").has_value());
  EXPECT_THROW(parse_label("yes"), Error);
}

TEST(Topics, FourteenCanonicalTopicsInReportOrder) {
  const auto& topics = canonical_topics();
  ASSERT_EQ(topics.size(), 14u);
  EXPECT_EQ(topics.front().topic_id, "CT20-AR-01");
  EXPECT_EQ(topics[11].topic_id, "COVID-19");
  EXPECT_EQ(topics[11].source_ids.size(), 4u);
  EXPECT_EQ(topics.back().topic_id, "CT21-AR-02");
  EXPECT_TRUE(is_canonical_topic("CT20-AR-08"));
  EXPECT_FALSE(is_canonical_topic("CT20-AR-03"));
  EXPECT_LT(canonical_rank("CT20-AR-30"), canonical_rank("COVID-19"));
}

TEST(MergeTable, CovidSourcesMapToOneTopic) {
  const auto table = default_merge_table();
  EXPECT_EQ(table.size(), 17u);
  for (const char* id : {"CT20-AR-03", "CT20-AR-28_w1", "CT20-AR-28_w2", "CT20-AR-29"}) EXPECT_EQ(table.at(id), "COVID-19");
  EXPECT_EQ(table.at("CT20-AR-01"), "CT20-AR-01");
}

TEST(MergeCovid, PreservesCountAndRelabels) {
  std::vector<TweetRecord> records = {record("1", "CT20-AR-03", Label::CW), record("2", "CT20-AR-29", Label::NCW),
                                      record("3", "CT20-AR-01", Label::CW)};
  const auto merged = merge_covid_topics(records, default_merge_table());
  ASSERT_EQ(merged.size(), 3u);
  EXPECT_EQ(merged[0].topic_id, "COVID-19");
  EXPECT_EQ(merged[1].topic_id, "COVID-19");
  EXPECT_EQ(merged[2].topic_id, "CT20-AR-01");
  records.push_back(record("4", "CT20-AR-99", Label::CW));
  EXPECT_THROW(merge_covid_topics(records, default_merge_table()), Error);
}

TEST(ParseTsv, Ct20Preset) {
  std::istringstream in("CT20-AR-01\t100\tنص أول\t1\r\nCT20-AR-01\t101\tنص ثان\t0\n");
  const auto records = parse_tsv(in, TsvSchema::ct20(), "ct20.tsv");
  ASSERT_EQ(records.size(), 2u);
  EXPECT_EQ(records[0].tweet_id, "100");
  EXPECT_EQ(records[0].text, "نص أول");
  EXPECT_EQ(records[0].label, Label::CW);
  EXPECT_EQ(records[1].label, Label::NCW);
  EXPECT_EQ(records[1].source, Source::CT20);
}

TEST(ParseTsv, Ct21PresetSkipsHeaderAndIgnoresClaim) {
  std::istringstream in(
      "topic_id\ttweet_id\ttweet_url\ttweet_text\tclaim\tcheck_worthiness\n"
      "CT21-AR-01\t7\thttp://x\tخبر\t1\t0\n");
  const auto records = parse_tsv(in, TsvSchema::ct21(), "ct21.tsv");
  ASSERT_EQ(records.size(), 1u);
  EXPECT_EQ(records[0].label, Label::NCW);
  EXPECT_EQ(records[0].source, Source::CT21);
}

TEST(ParseTsv, ErrorsCarryLineNumbers) {
  std::istringstream bad_columns("CT20-AR-01\t1\tok\t1\nCT20-AR-01\t2\tshort\n");
  try {
    parse_tsv(bad_columns, TsvSchema::ct20(), "f.tsv");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.origin(), "f.tsv");
  }
  std::istringstream bad_label("CT20-AR-01\t1\tok\tmaybe\n");
  EXPECT_THROW(parse_tsv(bad_label, TsvSchema::ct20(), "f.tsv"), ParseError);
  std::istringstream duplicate("CT20-AR-01\t1\ta\t1\nCT20-AR-01\t1\tb\t0\n");
  EXPECT_THROW(parse_tsv(duplicate, TsvSchema::ct20(), "f.tsv"), ParseError);
  std::istringstream empty_text("CT20-AR-01\t1\t\t1\n");
  EXPECT_THROW(parse_tsv(empty_text, TsvSchema::ct20(), "f.tsv"), ParseError);
}

TEST(NormalizeLabels, MissingCheckWorthinessIsAnError) {
  RawRecord raw{"CT21-AR-01", "1", "t", std::string("1"), std::nullopt, Source::CT21};
  EXPECT_THROW(normalize_labels(raw), Error);
  raw.check_worthiness = "1";
  EXPECT_EQ(normalize_labels(raw).label, Label::CW);
}

TEST(CombineSources, Ct20CopyWins) {
  std::vector<std::vector<TweetRecord>> batches = {
      {record("1", "CT20-AR-01", Label::CW)},
      {record("1", "CT21-AR-01", Label::NCW, Source::CT21), record("2", "CT21-AR-01", Label::NCW, Source::CT21)}};
  const auto result = combine_sources(batches);
  EXPECT_EQ(result.overlapping_removed, 1u);
  ASSERT_EQ(result.records.size(), 2u);
  EXPECT_EQ(result.records[0].source, Source::CT20);

  std::vector<std::vector<TweetRecord>> same_source = {{record("1", "CT20-AR-01", Label::CW)},
                                                       {record("1", "CT20-AR-02", Label::CW)}};
  EXPECT_THROW(combine_sources(same_source), Error);
}

TEST(Corpus, ValidatesAndIndexes) {
  const Corpus corpus({record("b", "CT20-AR-02", Label::CW), record("a", "CT20-AR-02", Label::NCW),
                       record("c", "CT20-AR-01", Label::NCW)});
  EXPECT_EQ(corpus.size(), 3u);
  EXPECT_EQ(corpus.topic_ids(), (std::vector<std::string>{"CT20-AR-01", "CT20-AR-02"}));
  const auto of = corpus.records_of("CT20-AR-02");
  ASSERT_EQ(of.size(), 2u);
  EXPECT_EQ(of[0]->tweet_id, "a");
  EXPECT_EQ(corpus.at("b").label, Label::CW);
  EXPECT_EQ(corpus.find("zz"), nullptr);
  EXPECT_THROW(corpus.at("zz"), Error);
  EXPECT_THROW(Corpus({record("a", "CT20-AR-01", Label::CW), record("a", "CT20-AR-02", Label::CW)}), Error);
  EXPECT_THROW(Corpus({record("a", "NOT-A-TOPIC", Label::CW)}), Error);
}

TEST(Corpus, StatsCountsPerTopic) {
  const Corpus corpus({record("1", "CT20-AR-01", Label::CW), record("2", "CT20-AR-01", Label::NCW),
                       record("3", "CT20-AR-01", Label::NCW), record("4", "CT20-AR-05", Label::CW)});
  const auto stats = corpus_stats(corpus);
  EXPECT_EQ(stats.total_count, 4u);
  EXPECT_EQ(stats.per_topic.at("CT20-AR-01").cw, 1u);
  EXPECT_EQ(stats.per_topic.at("CT20-AR-01").ncw, 2u);
  EXPECT_NEAR(stats.per_topic.at("CT20-AR-01").cw_fraction(), 1.0 / 3.0, 1e-12);
  EXPECT_THROW(corpus_stats(Corpus{}), Error);
}

TEST(Jsonl, RoundTripIsLossless) {
  auto r = record("9", "COVID-19", Label::CW, Source::CT21);
  r.raw_text = "original\ttext";
  const std::vector<TweetRecord> records = {record("1", "CT20-AR-01", Label::NCW), r};
  std::stringstream buffer;
  write_jsonl(buffer, records);
  const auto back = read_jsonl(buffer);
  EXPECT_EQ(back, records);
  const auto line = buffer.str().substr(0, buffer.str().find('\n'));
  EXPECT_LT(line.find("tweet_id"), line.find("topic_id"));
}

TEST(Jsonl, ContentHashTracksContent) {
  const Corpus a({record("1", "CT20-AR-01", Label::NCW)});
  const Corpus b({record("1", "CT20-AR-01", Label::CW)});
  EXPECT_EQ(a.content_hash(), Corpus({record("1", "CT20-AR-01", Label::NCW)}).content_hash());
  EXPECT_NE(a.content_hash(), b.content_hash());
}

TEST(Jsonl, BadLineReportsLine) {
  std::stringstream buffer("{\"tweet_id\":\"1\",\"topic_id\":\"CT20-AR-01\",\"text\":\"x\",\"label\":\"CW\"}\nnot json\n");
  try {
    read_jsonl(buffer, "c.jsonl");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}
