#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace claimcheck {

inline constexpr std::string_view kUrlToken = "[url]";
inline constexpr std::string_view kEmailToken = "[email]";
inline constexpr std::string_view kUserToken = "[user]";

bool is_placeholder(std::string_view token) noexcept;

struct NormalizedText {
  std::string text;
  // URLs, emails and mentions replaced by a placeholder token.
  std::size_t replacements = 0;

  bool operator==(const NormalizedText&) const = default;
};

// Tweet normalization, applied as three rule groups in a fixed order:
//   1. URLs, email addresses and @mentions become [url], [email], [user].
//   2. HTML entities are decoded; tags, line breaks, emoji/pictographs and
//      control/format characters are dropped; runs of 3+ identical characters
//      collapse to 2; whitespace is squeezed.
//   3. A single space is put between digit runs and letter runs, between
//      Arabic and Latin letters, and on both sides of brackets and placeholders.
// The rule groups are re-applied until the text stops changing, so
// normalize_tweet(normalize_tweet(x)).text == normalize_tweet(x).text.
NormalizedText normalize_tweet(std::string_view text);

}  // namespace claimcheck
