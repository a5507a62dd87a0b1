#include <optional>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "claimcheck/evaluation.hpp"
#include "claimcheck/report.hpp"

using namespace claimcheck;

namespace {

EvalReport make_report(std::string topic, double ap_cw, double ap_ncw) {
  EvalReport r;
  r.target_topic_id = std::move(topic);
  r.ap_cw = ap_cw;
  r.ap_ncw = ap_ncw;
  r.map = (ap_cw + ap_ncw) / 2.0;
  return r;
}

}  // namespace

TEST(Format, DeltaAndNumbers) {
  EXPECT_EQ(format_delta(3), "+3%");
  EXPECT_EQ(format_delta(0), "0%");
  EXPECT_EQ(format_delta(-11), "-11%");
  EXPECT_EQ(format_map(0.24684), "0.2468");
  EXPECT_EQ(format_map(1.0), "1.0000");
  EXPECT_EQ(format_fixed(0.1), "0.1000000000");
}

TEST(Format, CsvEscape) {
  EXPECT_EQ(csv_escape("plain"), "plain");
  EXPECT_EQ(csv_escape("a,b"), "\"a,b\"");
  EXPECT_EQ(csv_escape("say \"hi\""), "\"say \"\"hi\"\"\"");
  EXPECT_EQ(csv_escape("line\nbreak"), "\"line\nbreak\"");
}

TEST(ResultsTable, AverageSkipsFailedRows) {
  const std::vector<ResultRow> rows = {{"A", make_report("A", 0.2, 0.4)},
                                       {"B", std::nullopt},
                                       {"C", make_report("C", 0.4, 0.6)}};
  const auto table = render_results_table("Zero-shot", rows);
  EXPECT_NE(table.find("| A | 0.2000 | 0.4000 | 0.3000 |"), std::string::npos) << table;
  EXPECT_NE(table.find("FAILED"), std::string::npos);
  EXPECT_NE(table.find("0.3000 | 0.5000 | 0.4000"), std::string::npos) << table;
}

TEST(ImprovementTableRendering, CellsShowMapAndDelta) {
  ReportSet base = {{"CT20-AR-01", make_report("CT20-AR-01", 0.5, 0.5)}};
  ReportSet better = {{"CT20-AR-01", make_report("CT20-AR-01", 0.6, 0.6)}};
  const auto table = improvement_table(base, {{"CWE", better}});
  const auto text = render_improvement_table("Augmentation", "Zero", table, {"CT21-AR-02"});
  EXPECT_NE(text.find("CWE"), std::string::npos);
  EXPECT_NE(text.find("0.6000 (+10%)"), std::string::npos) << text;
  EXPECT_NE(text.find("CT21-AR-02"), std::string::npos);
}

TEST(ShotSweep, ColumnsPerShotValue) {
  const std::vector<std::string> topics = {"A", "B"};
  const std::vector<SweepColumn> columns = {{50, {0.5, 0.7}}, {100, {0.6, std::nullopt}}};
  const auto text = render_shot_sweep("Sweep", topics, columns);
  EXPECT_NE(text.find("50"), std::string::npos);
  EXPECT_NE(text.find("100"), std::string::npos);
  EXPECT_NE(text.find("0.6000"), std::string::npos);
  EXPECT_NE(text.find("FAILED"), std::string::npos) << text;
}
