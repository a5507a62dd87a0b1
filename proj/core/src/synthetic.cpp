#include "claimcheck/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "claimcheck/error.hpp"
#include "claimcheck/random.hpp"
#include "claimcheck/utf8.hpp"

namespace claimcheck {
namespace {

// Arabic letters U+0628..U+064A without the tatweel block.
constexpr char32_t kLetters[] = {U'ب', U'ت', U'ث', U'ج', U'ح', U'خ', U'د', U'ذ', U'ر', U'ز', U'س', U'ش',
                                 U'ص', U'ض', U'ط', U'ظ', U'ع', U'غ', U'ف', U'ق', U'ك', U'ل', U'م', U'ن',
                                 U'ه', U'و', U'ي', U'ا'};
constexpr std::size_t kLetterCount = sizeof(kLetters) / sizeof(kLetters[0]);

std::string pseudo_word(Rng& rng) {
  const auto length = 3 + uniform_below(rng, 4);
  std::u32string word;
  for (std::uint64_t i = 0; i < length; ++i) word.push_back(kLetters[uniform_below(rng, kLetterCount)]);
  return utf8::encode(word);
}

std::vector<std::string> vocabulary(std::uint64_t seed, std::string_view stream, std::size_t size) {
  auto rng = make_rng(seed, stream);
  std::vector<std::string> words;
  words.reserve(size);
  while (words.size() < size) {
    auto word = pseudo_word(rng);
    if (std::find(words.begin(), words.end(), word) == words.end()) words.push_back(std::move(word));
  }
  return words;
}

const std::string& pick(const std::vector<std::string>& words, Rng& rng) {
  return words[uniform_below(rng, words.size())];
}

}  // namespace

std::vector<TweetRecord> synthetic_records(const SyntheticSpec& spec) {
  const auto& canonical = canonical_topics();
  if (spec.topics == 0 || spec.topics > canonical.size()) {
    throw InvalidArgument(fmt::format("synthetic: topics must be in [1, {}]", canonical.size()));
  }
  if (spec.tweets_per_topic < 2) throw InvalidArgument("synthetic: tweets_per_topic must be >= 2");
  if (!(spec.cw_fraction > 0.0 && spec.cw_fraction < 1.0)) throw InvalidArgument("synthetic: cw_fraction must be in (0, 1)");
  if (spec.min_words == 0 || spec.max_words < spec.min_words) throw InvalidArgument("synthetic: bad word range");
  if (spec.background_vocab == 0 || spec.cw_vocab == 0) throw InvalidArgument("synthetic: empty vocabulary");

  const auto shared_cw = vocabulary(spec.seed, "synthetic/shared-cw", spec.cw_vocab);
  std::vector<TweetRecord> records;
  for (std::size_t t = 0; t < spec.topics; ++t) {
    const auto& topic = canonical[t].topic_id;
    const auto background = vocabulary(spec.seed, "synthetic/background/" + topic, spec.background_vocab);
    const auto topic_cw = vocabulary(spec.seed, "synthetic/cw/" + topic, spec.cw_vocab);
    auto rng = make_rng(spec.seed, "synthetic/tweets/" + topic);
    const auto cw_count = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::llround(spec.cw_fraction * static_cast<double>(spec.tweets_per_topic))));

    for (std::size_t i = 0; i < spec.tweets_per_topic; ++i) {
      const Label label = i < cw_count ? Label::CW : Label::NCW;
      const auto words = spec.min_words + uniform_below(rng, spec.max_words - spec.min_words + 1);
      std::string text;
      for (std::uint64_t w = 0; w < words; ++w) {
        if (!text.empty()) text += ' ';
        const double u = uniform_unit(rng);
        if (label == Label::CW && u < spec.signal_rate) {
          text += pick(topic_cw, rng);
        } else if (label == Label::CW && u < spec.signal_rate + spec.shared_cw_rate) {
          text += pick(shared_cw, rng);
        } else {
          text += pick(background, rng);
        }
      }
      if (uniform_unit(rng) < spec.noise_rate) {
        switch (uniform_below(rng, 3)) {
          case 0: text = fmt::format("@user{} {}", uniform_below(rng, 1000), text); break;
          case 1: text += fmt::format(" https://t.co/x{}", uniform_below(rng, 100000)); break;
          default: text += " \xF0\x9F\x98\x82\xF0\x9F\x98\x82"; break;
        }
      }
      records.push_back({fmt::format("{}-{:05}", topic, i), topic, std::move(text), label, Source::CT20, std::nullopt});
    }
  }
  return records;
}

Corpus synthetic_corpus(const SyntheticSpec& spec) { return Corpus(synthetic_records(spec)); }

nlohmann::json to_json(const SyntheticSpec& spec) {
  return {{"seed", spec.seed},
          {"topics", spec.topics},
          {"tweets_per_topic", spec.tweets_per_topic},
          {"cw_fraction", spec.cw_fraction},
          {"min_words", spec.min_words},
          {"max_words", spec.max_words},
          {"background_vocab", spec.background_vocab},
          {"cw_vocab", spec.cw_vocab},
          {"signal_rate", spec.signal_rate},
          {"shared_cw_rate", spec.shared_cw_rate},
          {"noise_rate", spec.noise_rate}};
}

SyntheticSpec synthetic_spec_from_json(const nlohmann::json& object, SyntheticSpec spec) {
  if (!object.is_object()) throw ConfigError("synthetic spec must be an object");
  for (const auto& [key, value] : object.items()) {
    if (key == "seed") spec.seed = value.get<std::uint64_t>();
    else if (key == "topics") spec.topics = value.get<std::size_t>();
    else if (key == "tweets_per_topic") spec.tweets_per_topic = value.get<std::size_t>();
    else if (key == "cw_fraction") spec.cw_fraction = value.get<double>();
    else if (key == "min_words") spec.min_words = value.get<std::size_t>();
    else if (key == "max_words") spec.max_words = value.get<std::size_t>();
    else if (key == "background_vocab") spec.background_vocab = value.get<std::size_t>();
    else if (key == "cw_vocab") spec.cw_vocab = value.get<std::size_t>();
    else if (key == "signal_rate") spec.signal_rate = value.get<double>();
    else if (key == "shared_cw_rate") spec.shared_cw_rate = value.get<double>();
    else if (key == "noise_rate") spec.noise_rate = value.get<double>();
    else throw ConfigError(fmt::format("synthetic spec: unknown key '{}'", key));
  }
  return spec;
}

}  // namespace claimcheck
