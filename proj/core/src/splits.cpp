#include "claimcheck/splits.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "claimcheck/error.hpp"
#include "claimcheck/hashing.hpp"
#include "claimcheck/random.hpp"

namespace claimcheck {

const std::vector<std::string>& HoldoutTable::pool(std::string_view topic_id) const {
  const auto it = per_topic.find(topic_id);
  if (it == per_topic.end()) throw InvalidArgument(fmt::format("no holdout pool for topic '{}'", topic_id));
  return it->second;
}

HoldoutTable make_holdouts(const Corpus& corpus, std::uint64_t seed, std::size_t k) {
  if (k == 0) throw InvalidArgument("make_holdouts: k must be at least 1");
  HoldoutTable table;
  table.seed = seed;
  table.k = k;
  for (const auto& topic : corpus.topic_ids()) {
    const auto records = corpus.records_of(topic);
    if (records.empty()) throw InvalidArgument(fmt::format("make_holdouts: topic '{}' has no records", topic));

    std::vector<std::string> cw;
    std::vector<std::string> ncw;
    for (const auto* record : records) (record->label == Label::CW ? cw : ncw).push_back(record->tweet_id);

    const std::size_t n = records.size();
    const std::size_t size = std::min(k, n);
    if (k >= n) {
      table.warnings.push_back(
          fmt::format("topic {}: holdout size {} covers all {} records; its test set is empty", topic, k, n));
    }
    // Round-half-up share of CW, clamped so neither class is over-drawn.
    auto cw_take = static_cast<std::size_t>(std::floor(static_cast<double>(size) * cw.size() / n + 0.5));
    cw_take = std::min(cw_take, cw.size());
    std::size_t ncw_take = size - cw_take;
    if (ncw_take > ncw.size()) {
      ncw_take = ncw.size();
      cw_take = size - ncw_take;
    }

    auto rng = make_rng(seed, "holdout/" + topic);
    shuffle(cw, rng);
    shuffle(ncw, rng);
    std::vector<std::string> pool;
    pool.reserve(size);
    pool.insert(pool.end(), cw.begin(), cw.begin() + static_cast<std::ptrdiff_t>(cw_take));
    pool.insert(pool.end(), ncw.begin(), ncw.begin() + static_cast<std::ptrdiff_t>(ncw_take));
    std::sort(pool.begin(), pool.end());
    shuffle(pool, rng);
    table.per_topic.emplace(topic, std::move(pool));
  }
  return table;
}

std::string_view to_string(Setting setting) noexcept {
  return setting == Setting::ZeroShot ? "zero_shot" : "few_shot";
}

Setting parse_setting(std::string_view value) {
  if (value == "zero_shot" || value == "zero-shot") return Setting::ZeroShot;
  if (value == "few_shot" || value == "few-shot") return Setting::FewShot;
  throw InvalidArgument(fmt::format("unknown setting '{}'", value));
}

std::string TopicSplit::test_hash() const { return id_set_hash(test); }
std::string TopicSplit::train_hash() const { return id_set_hash(train); }

namespace {

void check_disjoint(const TopicSplit& split) {
  std::vector<std::string> overlap;
  std::set_intersection(split.train.begin(), split.train.end(), split.test.begin(), split.test.end(),
                        std::back_inserter(overlap));
  if (!overlap.empty()) {
    throw Error(fmt::format("split for {} leaks {} test records into train (first: {})", split.target, overlap.size(),
                            overlap.front()));
  }
}

}  // namespace

TopicSplit zero_shot_split(const Corpus& corpus, const HoldoutTable& holdouts, std::string_view target) {
  if (!corpus.has_topic(target)) throw InvalidArgument(fmt::format("unknown target topic '{}'", target));
  const auto& pool = holdouts.pool(target);
  const std::unordered_set<std::string_view> held(pool.begin(), pool.end());

  TopicSplit split;
  split.target = std::string(target);
  split.seed = holdouts.seed;
  for (const auto& record : corpus.records()) {
    if (record.topic_id != target) {
      split.train.push_back(record.tweet_id);
    } else if (!held.contains(record.tweet_id)) {
      split.test.push_back(record.tweet_id);
    }
  }
  std::sort(split.train.begin(), split.train.end());
  std::sort(split.test.begin(), split.test.end());
  check_disjoint(split);
  return split;
}

TopicSplit few_shot_split(const Corpus& corpus, const HoldoutTable& holdouts, std::string_view target,
                          std::size_t shots) {
  TopicSplit split = zero_shot_split(corpus, holdouts, target);
  const auto& pool = holdouts.pool(target);
  if (shots > pool.size()) {
    throw InvalidArgument(
        fmt::format("few_shot_split: {} shots requested but the {} pool holds {}", shots, target, pool.size()));
  }
  split.shots = shots;
  split.few_shot.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(shots));
  split.train.insert(split.train.end(), split.few_shot.begin(), split.few_shot.end());
  std::sort(split.train.begin(), split.train.end());
  check_disjoint(split);
  return split;
}

nlohmann::json to_json(const TopicSplit& split) {
  nlohmann::ordered_json out;
  out["target"] = split.target;
  out["seed"] = split.seed;
  out["shots"] = split.shots;
  out["setting"] = to_string(split.setting());
  out["train_ids"] = split.train;
  out["few_shot_ids"] = split.few_shot;
  out["test_ids"] = split.test;
  out["test_hash"] = split.test_hash();
  return nlohmann::json(out);
}

TopicSplit split_from_json(const nlohmann::json& object) {
  TopicSplit split;
  split.target = object.at("target").get<std::string>();
  split.seed = object.at("seed").get<std::uint64_t>();
  split.shots = object.at("shots").get<std::size_t>();
  split.train = object.at("train_ids").get<std::vector<std::string>>();
  split.few_shot = object.value("few_shot_ids", std::vector<std::string>{});
  split.test = object.at("test_ids").get<std::vector<std::string>>();
  std::sort(split.train.begin(), split.train.end());
  std::sort(split.test.begin(), split.test.end());
  if (split.few_shot.size() != split.shots) {
    throw InvalidArgument(fmt::format("split: shots={} but {} few-shot ids listed", split.shots, split.few_shot.size()));
  }
  check_disjoint(split);
  return split;
}

nlohmann::json to_json(const HoldoutTable& holdouts) {
  nlohmann::ordered_json out;
  out["seed"] = holdouts.seed;
  out["k"] = holdouts.k;
  out["stratified"] = holdouts.stratified;
  nlohmann::ordered_json pools = nlohmann::ordered_json::object();
  for (const auto& [topic, ids] : holdouts.per_topic) pools[topic] = ids;
  out["per_topic"] = pools;
  out["warnings"] = holdouts.warnings;
  return nlohmann::json(out);
}

}  // namespace claimcheck
