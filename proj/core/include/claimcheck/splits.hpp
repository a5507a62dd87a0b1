#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "claimcheck/corpus.hpp"

namespace claimcheck {

inline constexpr std::size_t kDefaultHoldoutSize = 200;
inline constexpr std::array<std::size_t, 4> kShotSweep = {50, 100, 150, 200};

// Per-topic pools held out of every test set. Each pool is label-stratified and
// stored in a fixed shuffled order; few-shot subsets are prefixes of it.
struct HoldoutTable {
  std::uint64_t seed = 0;
  std::size_t k = kDefaultHoldoutSize;
  bool stratified = true;
  std::map<std::string, std::vector<std::string>, std::less<>> per_topic;
  std::vector<std::string> warnings;

  const std::vector<std::string>& pool(std::string_view topic_id) const;
};

HoldoutTable make_holdouts(const Corpus& corpus, std::uint64_t seed, std::size_t k = kDefaultHoldoutSize);

enum class Setting { ZeroShot, FewShot };

std::string_view to_string(Setting setting) noexcept;
Setting parse_setting(std::string_view value);

struct TopicSplit {
  std::string target;
  std::uint64_t seed = 0;
  std::size_t shots = 0;
  // Sorted by tweet_id.
  std::vector<std::string> train;
  // Target-topic records added to train, in holdout-pool order.
  std::vector<std::string> few_shot;
  // Sorted by tweet_id.
  std::vector<std::string> test;

  Setting setting() const noexcept { return shots == 0 ? Setting::ZeroShot : Setting::FewShot; }
  std::string test_hash() const;
  std::string train_hash() const;
};

// Train on every topic but the target; test on the target minus its pool.
TopicSplit zero_shot_split(const Corpus& corpus, const HoldoutTable& holdouts, std::string_view target);

// The zero-shot split plus the first `shots` ids of the target's pool.
// shots == 0 yields the zero-shot split.
TopicSplit few_shot_split(const Corpus& corpus, const HoldoutTable& holdouts, std::string_view target,
                          std::size_t shots);

nlohmann::json to_json(const TopicSplit& split);
TopicSplit split_from_json(const nlohmann::json& object);
nlohmann::json to_json(const HoldoutTable& holdouts);

}  // namespace claimcheck
