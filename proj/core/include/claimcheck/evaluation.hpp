#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "claimcheck/corpus.hpp"

namespace claimcheck {

struct RankedEntry {
  std::string tweet_id;
  double score = 0.0;

  bool operator==(const RankedEntry&) const = default;
};

// Entries sorted by descending score; equal scores by ascending tweet_id.
struct ScoredRanking {
  std::string target_topic_id;
  std::vector<RankedEntry> entries;
};

using ScoreMap = std::map<std::string, double, std::less<>>;
using LabelMap = std::map<std::string, Label, std::less<>>;
using PredictionMap = std::map<std::string, Label, std::less<>>;

// Sorts by the ranking rule. Throws on scores outside [0, 1] or repeated ids.
ScoredRanking make_ranking(std::string target_topic_id, std::vector<RankedEntry> entries);

// Mean of precision@rank over the positive items among the first `top_n`
// ranked items (all items when top_n is empty); 0 when none is positive.
// The ranking must already be ordered by descending P(positive).
double average_precision(std::span<const std::string> ranked_ids, const LabelMap& labels, Label positive,
                         std::optional<std::size_t> top_n = std::nullopt);
double average_precision(const ScoredRanking& ranking, const LabelMap& labels, Label positive,
                         std::optional<std::size_t> top_n = std::nullopt);

enum class MapMode {
  TwoClass,  // mean of the CW and NCW class APs
  CwOnly,    // CW-class AP only
};

std::string_view to_string(MapMode mode) noexcept;
MapMode parse_map_mode(std::string_view value);

struct ApBreakdown {
  double ap_cw = 0.0;
  double ap_ncw = 0.0;
  double map = 0.0;
};

// ap_cw ranks by descending P(CW); ap_ncw by descending P(NCW), i.e.
// ascending P(CW). Ties go to the smaller tweet_id in both rankings.
ApBreakdown mean_average_precision(const ScoreMap& cw_scores, const LabelMap& labels, MapMode mode = MapMode::TwoClass,
                                   std::optional<std::size_t> top_n = std::nullopt);

struct PrfScores {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

PrfScores precision_recall_f1(const PredictionMap& predictions, const LabelMap& labels, Label positive = Label::CW);

struct EvalReport {
  std::string target_topic_id;
  double ap_cw = 0.0;
  double ap_ncw = 0.0;
  double map = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t n_test = 0;
  MapMode mode = MapMode::TwoClass;
  double threshold = 0.5;
};

EvalReport evaluate(std::string target_topic_id, const ScoreMap& cw_scores, const LabelMap& labels,
                    double threshold = 0.5, MapMode mode = MapMode::TwoClass);

nlohmann::json to_json(const EvalReport& report);
EvalReport report_from_json(const nlohmann::json& object);

// round(100 * (new - base)), halves away from zero.
int delta_percent(double base_map, double new_map);

struct ImprovementCell {
  double base_map = 0.0;
  double new_map = 0.0;
  int delta_pct = 0;
};

ImprovementCell improvement_cell(double base_map, double new_map);

using ReportSet = std::map<std::string, EvalReport, std::less<>>;

struct ImprovementTable {
  struct Row {
    std::string topic_id;
    double base_map = 0.0;
    std::vector<ImprovementCell> cells;  // one per variant
  };
  std::vector<std::string> variants;
  std::vector<Row> rows;  // report (canonical) topic order
  Row average;            // means of the per-topic MAP columns
};

// Every variant must cover exactly the topics of `base`.
ImprovementTable improvement_table(const ReportSet& base,
                                   const std::vector<std::pair<std::string, ReportSet>>& variants);

nlohmann::json to_json(const ImprovementTable& table);

}  // namespace claimcheck
