#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "claimcheck/evaluation.hpp"

namespace claimcheck {

// "+3%", "0%", "-11%".
std::string format_delta(int delta_pct);
// Four decimals, as printed in the result tables.
std::string format_map(double value);
// Fixed ten decimals; used in CSV so output is byte-stable.
std::string format_fixed(double value);

std::string csv_escape(std::string_view field);

struct ResultRow {
  std::string topic_id;
  std::optional<EvalReport> report;  // empty when the cell failed
};

// Topic | AP_CW | AP_NCW | MAP, plus an average row over the rows that ran.
std::string render_results_table(std::string_view title, const std::vector<ResultRow>& rows);

// Base MAP column followed by "MAP (delta)" per variant, plus the average row.
// Topics listed in `failed` are appended as a note.
std::string render_improvement_table(std::string_view title, std::string_view base_label, const ImprovementTable& table,
                                     const std::vector<std::string>& failed = {});

struct SweepColumn {
  std::size_t shots = 0;
  std::vector<std::optional<double>> maps;  // aligned with the topic list
};

// Per-topic MAP for every shots value, plus the average row.
std::string render_shot_sweep(std::string_view title, const std::vector<std::string>& topic_ids,
                              const std::vector<SweepColumn>& columns);

}  // namespace claimcheck
