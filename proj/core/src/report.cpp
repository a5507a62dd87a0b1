#include "claimcheck/report.hpp"

#include <fmt/format.h>

namespace claimcheck {

std::string format_delta(int delta_pct) {
  if (delta_pct > 0) return fmt::format("+{}%", delta_pct);
  return fmt::format("{}%", delta_pct);
}

std::string format_map(double value) { return fmt::format("{:.4f}", value); }

std::string format_fixed(double value) { return fmt::format("{:.10f}", value); }

std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string render_results_table(std::string_view title, const std::vector<ResultRow>& rows) {
  std::string out = fmt::format("### {}\n\n| Topic | AP_CW | AP_NCW | MAP |\n|---|---:|---:|---:|\n", title);
  double cw = 0, ncw = 0, map = 0;
  std::size_t ok = 0;
  for (const auto& row : rows) {
    if (!row.report) {
      out += fmt::format("| {} | FAILED | FAILED | FAILED |\n", row.topic_id);
      continue;
    }
    const auto& r = *row.report;
    out += fmt::format("| {} | {} | {} | {} |\n", row.topic_id, format_map(r.ap_cw), format_map(r.ap_ncw), format_map(r.map));
    cw += r.ap_cw;
    ncw += r.ap_ncw;
    map += r.map;
    ++ok;
  }
  if (ok > 0) {
    const double n = static_cast<double>(ok);
    out += fmt::format("| **Average** | {} | {} | {} |\n", format_map(cw / n), format_map(ncw / n), format_map(map / n));
  }
  if (ok != rows.size()) out += fmt::format("\nAverage over {} of {} topics; failed cells excluded.\n", ok, rows.size());
  return out + "\n";
}

namespace {

std::string improvement_row(std::string_view label, const ImprovementTable::Row& row) {
  std::string out = fmt::format("| {} | {} |", label, format_map(row.base_map));
  for (const auto& cell : row.cells) out += fmt::format(" {} ({}) |", format_map(cell.new_map), format_delta(cell.delta_pct));
  return out + "\n";
}

}  // namespace

std::string render_improvement_table(std::string_view title, std::string_view base_label, const ImprovementTable& table,
                                     const std::vector<std::string>& failed) {
  std::string out = fmt::format("### {}\n\n| Topic | {} |", title, base_label);
  for (const auto& variant : table.variants) out += fmt::format(" {} |", variant);
  out += "\n|---|---:|";
  for (std::size_t i = 0; i < table.variants.size(); ++i) out += "---:|";
  out += "\n";
  for (const auto& row : table.rows) out += improvement_row(row.topic_id, row);
  if (!table.rows.empty()) out += improvement_row("**Average**", table.average);
  if (!failed.empty()) {
    out += "\nExcluded (at least one failed cell):";
    for (const auto& topic : failed) out += " " + topic;
    out += "\n";
  }
  return out + "\n";
}

std::string render_shot_sweep(std::string_view title, const std::vector<std::string>& topic_ids,
                              const std::vector<SweepColumn>& columns) {
  std::string out = fmt::format("### {}\n\n| Topic |", title);
  for (const auto& column : columns) out += fmt::format(" {} shots |", column.shots);
  out += "\n|---|";
  for (std::size_t i = 0; i < columns.size(); ++i) out += "---:|";
  out += "\n";
  for (std::size_t t = 0; t < topic_ids.size(); ++t) {
    out += fmt::format("| {} |", topic_ids[t]);
    for (const auto& column : columns) {
      const auto& value = column.maps.at(t);
      out += value ? fmt::format(" {} |", format_map(*value)) : std::string(" FAILED |");
    }
    out += "\n";
  }
  out += "| **Average** |";
  for (const auto& column : columns) {
    double sum = 0;
    std::size_t ok = 0;
    for (const auto& value : column.maps) {
      if (value) {
        sum += *value;
        ++ok;
      }
    }
    out += ok ? fmt::format(" {} |", format_map(sum / static_cast<double>(ok))) : std::string(" FAILED |");
  }
  return out + "\n\n";
}

}  // namespace claimcheck
