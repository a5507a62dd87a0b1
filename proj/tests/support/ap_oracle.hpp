#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

// Reference AP computed straight from the definition, sharing no code with the
// library: each item's rank is 1 + the number of items placed before it under
// the ordering rule, counted pairwise.
namespace oracle {

struct Item {
  std::string id;
  double score = 0.0;  // P(positive class)
  bool positive = false;
};

inline bool before(const Item& a, const Item& b) {
  if (a.score != b.score) return a.score > b.score;
  return a.id < b.id;
}

inline double average_precision(const std::vector<Item>& items, std::optional<std::size_t> top_n = std::nullopt) {
  const std::size_t depth = top_n && *top_n < items.size() ? *top_n : items.size();
  std::vector<std::size_t> rank(items.size(), 1);
  for (std::size_t i = 0; i < items.size(); ++i) {
    for (std::size_t j = 0; j < items.size(); ++j) {
      if (j != i && before(items[j], items[i])) ++rank[i];
    }
  }
  double sum = 0.0;
  std::size_t counted = 0;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (!items[i].positive || rank[i] > depth) continue;
    std::size_t hits_at_rank = 0;
    for (std::size_t j = 0; j < items.size(); ++j) {
      if (items[j].positive && rank[j] <= rank[i]) ++hits_at_rank;
    }
    sum += static_cast<double>(hits_at_rank) / static_cast<double>(rank[i]);
    ++counted;
  }
  return counted == 0 ? 0.0 : sum / static_cast<double>(counted);
}

// CW items ranked by P(CW); NCW items by P(NCW) = 1 - P(CW). Ties by id both ways.
struct Breakdown {
  double ap_cw = 0.0;
  double ap_ncw = 0.0;
};

inline Breakdown class_aps(const std::vector<Item>& cw_items, std::optional<std::size_t> top_n = std::nullopt) {
  std::vector<Item> flipped = cw_items;
  for (auto& item : flipped) {
    item.positive = !item.positive;
    item.score = -item.score;  // same order as 1 - p without rounding
  }
  return {average_precision(cw_items, top_n), average_precision(flipped, top_n)};
}

}  // namespace oracle
