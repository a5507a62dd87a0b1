#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "claimcheck/corpus.hpp"

namespace claimcheck {

// Generated corpus over the first `topics` canonical topics. Each topic has its
// own background vocabulary and its own CW vocabulary; `shared_cw_rate` mixes in
// a CW vocabulary common to all topics.
struct SyntheticSpec {
  std::uint64_t seed = 0;
  std::size_t topics = 14;
  std::size_t tweets_per_topic = 400;
  double cw_fraction = 0.3;
  std::size_t min_words = 8;
  std::size_t max_words = 16;
  std::size_t background_vocab = 300;
  std::size_t cw_vocab = 40;
  double signal_rate = 0.35;     // per-word chance a CW tweet draws a topic CW word
  double shared_cw_rate = 0.0;   // per-word chance a CW tweet draws a shared CW word
  double noise_rate = 0.1;       // chance of a URL / mention / emoji decoration
};

std::vector<TweetRecord> synthetic_records(const SyntheticSpec& spec);
Corpus synthetic_corpus(const SyntheticSpec& spec);

nlohmann::json to_json(const SyntheticSpec& spec);
SyntheticSpec synthetic_spec_from_json(const nlohmann::json& object, SyntheticSpec defaults = {});

}  // namespace claimcheck
