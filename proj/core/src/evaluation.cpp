#include "claimcheck/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "claimcheck/error.hpp"

namespace claimcheck {

ScoredRanking make_ranking(std::string target_topic_id, std::vector<RankedEntry> entries) {
  std::unordered_set<std::string_view> seen;
  for (const auto& entry : entries) {
    if (!(entry.score >= 0.0 && entry.score <= 1.0)) {
      throw InvalidArgument(fmt::format("ranking: score {} for {} outside [0, 1]", entry.score, entry.tweet_id));
    }
    if (!seen.insert(entry.tweet_id).second) {
      throw InvalidArgument(fmt::format("ranking: tweet_id {} listed twice", entry.tweet_id));
    }
  }
  std::sort(entries.begin(), entries.end(), [](const RankedEntry& a, const RankedEntry& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.tweet_id < b.tweet_id;
  });
  return ScoredRanking{std::move(target_topic_id), std::move(entries)};
}

double average_precision(std::span<const std::string> ranked_ids, const LabelMap& labels, Label positive,
                         std::optional<std::size_t> top_n) {
  if (ranked_ids.empty()) throw InvalidArgument("average_precision: empty ranking");
  const std::size_t depth = std::min(ranked_ids.size(), top_n.value_or(ranked_ids.size()));
  std::size_t hits = 0;
  double precision_sum = 0.0;
  for (std::size_t rank = 0; rank < depth; ++rank) {
    const auto it = labels.find(ranked_ids[rank]);
    if (it == labels.end()) throw InvalidArgument(fmt::format("average_precision: no label for {}", ranked_ids[rank]));
    if (it->second == positive) {
      ++hits;
      precision_sum += static_cast<double>(hits) / static_cast<double>(rank + 1);
    }
  }
  return hits == 0 ? 0.0 : precision_sum / static_cast<double>(hits);
}

double average_precision(const ScoredRanking& ranking, const LabelMap& labels, Label positive,
                         std::optional<std::size_t> top_n) {
  std::vector<std::string> ids;
  ids.reserve(ranking.entries.size());
  for (const auto& entry : ranking.entries) ids.push_back(entry.tweet_id);
  return average_precision(ids, labels, positive, top_n);
}

std::string_view to_string(MapMode mode) noexcept { return mode == MapMode::TwoClass ? "two_class" : "cw_only"; }

MapMode parse_map_mode(std::string_view value) {
  if (value == "two_class") return MapMode::TwoClass;
  if (value == "cw_only") return MapMode::CwOnly;
  throw InvalidArgument(fmt::format("unknown MAP mode '{}' (expected two_class or cw_only)", value));
}

namespace {

void require_same_ids(const auto& left, const LabelMap& labels, std::string_view what) {
  const bool same = left.size() == labels.size() &&
                    std::equal(left.begin(), left.end(), labels.begin(),
                               [](const auto& a, const auto& b) { return a.first == b.first; });
  if (!same) {
    throw InvalidArgument(fmt::format("{}: id sets differ ({} vs {} labelled ids)", what, left.size(), labels.size()));
  }
}

}  // namespace

ApBreakdown mean_average_precision(const ScoreMap& cw_scores, const LabelMap& labels, MapMode mode,
                                   std::optional<std::size_t> top_n) {
  require_same_ids(cw_scores, labels, "mean_average_precision");
  std::vector<std::pair<std::string_view, double>> items(cw_scores.begin(), cw_scores.end());

  std::vector<std::string> order;
  order.reserve(items.size());
  // ScoreMap iterates in ascending id order, so stable_sort keeps the id tie rule.
  std::stable_sort(items.begin(), items.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
  for (const auto& [id, score] : items) order.emplace_back(id);
  ApBreakdown result;
  result.ap_cw = average_precision(order, labels, Label::CW, top_n);

  std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::stable_sort(items.begin(), items.end(), [](const auto& a, const auto& b) { return a.second < b.second; });
  order.clear();
  for (const auto& [id, score] : items) order.emplace_back(id);
  result.ap_ncw = average_precision(order, labels, Label::NCW, top_n);

  result.map = mode == MapMode::TwoClass ? (result.ap_cw + result.ap_ncw) / 2.0 : result.ap_cw;
  return result;
}

PrfScores precision_recall_f1(const PredictionMap& predictions, const LabelMap& labels, Label positive) {
  require_same_ids(predictions, labels, "precision_recall_f1");
  std::size_t true_positive = 0;
  std::size_t predicted = 0;
  std::size_t actual = 0;
  auto label_it = labels.begin();
  for (const auto& [id, predicted_label] : predictions) {
    const bool is_predicted = predicted_label == positive;
    const bool is_actual = (label_it++)->second == positive;
    predicted += is_predicted;
    actual += is_actual;
    true_positive += is_predicted && is_actual;
  }
  PrfScores out;
  out.precision = predicted == 0 ? 0.0 : static_cast<double>(true_positive) / predicted;
  out.recall = actual == 0 ? 0.0 : static_cast<double>(true_positive) / actual;
  const double sum = out.precision + out.recall;
  out.f1 = sum == 0.0 ? 0.0 : 2.0 * out.precision * out.recall / sum;
  return out;
}

EvalReport evaluate(std::string target_topic_id, const ScoreMap& cw_scores, const LabelMap& labels, double threshold,
                    MapMode mode) {
  const auto ap = mean_average_precision(cw_scores, labels, mode);
  PredictionMap predictions;
  for (const auto& [id, score] : cw_scores) predictions.emplace(id, score >= threshold ? Label::CW : Label::NCW);
  const auto prf = precision_recall_f1(predictions, labels);

  EvalReport report;
  report.target_topic_id = std::move(target_topic_id);
  report.ap_cw = ap.ap_cw;
  report.ap_ncw = ap.ap_ncw;
  report.map = ap.map;
  report.precision = prf.precision;
  report.recall = prf.recall;
  report.f1 = prf.f1;
  report.n_test = cw_scores.size();
  report.mode = mode;
  report.threshold = threshold;
  return report;
}

nlohmann::json to_json(const EvalReport& report) {
  nlohmann::ordered_json out;
  out["target_topic_id"] = report.target_topic_id;
  out["ap_cw"] = report.ap_cw;
  out["ap_ncw"] = report.ap_ncw;
  out["map"] = report.map;
  out["precision"] = report.precision;
  out["recall"] = report.recall;
  out["f1"] = report.f1;
  out["n_test"] = report.n_test;
  out["map_mode"] = to_string(report.mode);
  out["threshold"] = report.threshold;
  return nlohmann::json(out);
}

EvalReport report_from_json(const nlohmann::json& object) {
  EvalReport report;
  report.target_topic_id = object.at("target_topic_id").get<std::string>();
  report.ap_cw = object.value("ap_cw", 0.0);
  report.ap_ncw = object.value("ap_ncw", 0.0);
  report.map = object.at("map").get<double>();
  report.precision = object.value("precision", 0.0);
  report.recall = object.value("recall", 0.0);
  report.f1 = object.value("f1", 0.0);
  report.n_test = object.value("n_test", std::size_t{0});
  report.mode = parse_map_mode(object.value("map_mode", std::string("two_class")));
  report.threshold = object.value("threshold", 0.5);
  return report;
}

int delta_percent(double base_map, double new_map) {
  // Snap to 1e-9 first so decimal inputs such as 0.485 -> 0.5 land on the
  // intended half instead of one ulp below it.
  const double points = std::round(100.0 * (new_map - base_map) * 1e9) / 1e9;
  return static_cast<int>(std::lround(points));
}

ImprovementCell improvement_cell(double base_map, double new_map) {
  return ImprovementCell{base_map, new_map, delta_percent(base_map, new_map)};
}

ImprovementTable improvement_table(const ReportSet& base,
                                   const std::vector<std::pair<std::string, ReportSet>>& variants) {
  if (base.empty()) throw InvalidArgument("improvement_table: no base reports");
  for (const auto& [name, reports] : variants) {
    const bool same = reports.size() == base.size() &&
                      std::equal(reports.begin(), reports.end(), base.begin(),
                                 [](const auto& a, const auto& b) { return a.first == b.first; });
    if (!same) throw InvalidArgument(fmt::format("improvement_table: variant '{}' covers different topics", name));
  }

  std::vector<std::string> topics;
  for (const auto& [topic, report] : base) topics.push_back(topic);
  std::stable_sort(topics.begin(), topics.end(),
                   [](const auto& a, const auto& b) { return canonical_rank(a) < canonical_rank(b); });

  ImprovementTable table;
  std::vector<double> variant_sums(variants.size(), 0.0);
  double base_sum = 0.0;
  for (const auto& topic : topics) {
    ImprovementTable::Row row;
    row.topic_id = topic;
    row.base_map = base.find(topic)->second.map;
    base_sum += row.base_map;
    for (std::size_t v = 0; v < variants.size(); ++v) {
      const double new_map = variants[v].second.find(topic)->second.map;
      variant_sums[v] += new_map;
      row.cells.push_back(improvement_cell(row.base_map, new_map));
    }
    table.rows.push_back(std::move(row));
  }
  const auto n = static_cast<double>(topics.size());
  table.average.topic_id = "Average";
  table.average.base_map = base_sum / n;
  for (std::size_t v = 0; v < variants.size(); ++v) {
    table.variants.push_back(variants[v].first);
    table.average.cells.push_back(improvement_cell(table.average.base_map, variant_sums[v] / n));
  }
  return table;
}

nlohmann::json to_json(const ImprovementTable& table) {
  auto row_json = [&](const ImprovementTable::Row& row) {
    nlohmann::ordered_json out;
    out["topic_id"] = row.topic_id;
    out["base_map"] = row.base_map;
    nlohmann::ordered_json cells = nlohmann::ordered_json::array();
    for (std::size_t v = 0; v < row.cells.size(); ++v) {
      cells.push_back({{"variant", table.variants[v]}, {"map", row.cells[v].new_map}, {"delta_pct", row.cells[v].delta_pct}});
    }
    out["cells"] = cells;
    return out;
  };
  nlohmann::ordered_json out;
  out["variants"] = table.variants;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) rows.push_back(row_json(row));
  out["rows"] = rows;
  out["average"] = row_json(table.average);
  return nlohmann::json(out);
}

}  // namespace claimcheck
