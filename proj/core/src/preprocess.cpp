#include "claimcheck/preprocess.hpp"

#include <cctype>
#include <optional>
#include <regex>

#include "claimcheck/utf8.hpp"

namespace claimcheck {

namespace {

// Private-use code points stand in for placeholders between rule groups so
// that bracket spacing and character filters never touch them.
constexpr char32_t kUrlSentinel = 0xE000;
constexpr char32_t kEmailSentinel = 0xE001;
constexpr char32_t kUserSentinel = 0xE002;
constexpr int kMaxPasses = 8;

bool is_sentinel(char32_t c) { return c >= kUrlSentinel && c <= kUserSentinel; }

const std::regex& placeholder_pattern() {
  // Groups: 1 URL, 2 email, 3 mention, 4 literal placeholder already present.
  static const std::regex pattern(
      R"((https?://[-A-Za-z0-9._~:/?#@!$&*+,;=%]*|www\.[-A-Za-z0-9._~:/?#@!$&*+,;=%]*|)"
      R"((?:t\.co|bit\.ly|goo\.gl|tinyurl\.com|ow\.ly|buff\.ly|youtu\.be|fb\.me|is\.gd|dlvr\.it)/[-A-Za-z0-9._~:/?#@!$&*+,;=%]*))"
      R"(|([A-Za-z0-9._%+\-]+@[A-Za-z0-9\-]+(?:\.[A-Za-z0-9\-]+)+))"
      R"(|(@[A-Za-z0-9_]+))"
      R"(|(\[(?:url|email|user)\]))",
      std::regex::ECMAScript | std::regex::icase | std::regex::optimize);
  return pattern;
}

bool is_private_use(char32_t c) {
  return (c >= 0xE000 && c <= 0xF8FF) || (c >= 0xF0000 && c <= 0xFFFFD) || (c >= 0x100000 && c <= 0x10FFFD);
}

// Rule group 1. Works on UTF-8 bytes; all patterns are ASCII so multi-byte
// sequences never match inside a character class.
std::u32string substitute_placeholders(std::string_view text, std::size_t& replacements) {
  std::u32string decoded = utf8::decode(text);
  std::erase_if(decoded, is_private_use);
  const std::string bytes = utf8::encode(decoded);

  std::string out;
  out.reserve(bytes.size() + 16);
  auto cursor = bytes.cbegin();
  for (std::sregex_iterator it(bytes.cbegin(), bytes.cend(), placeholder_pattern()), end; it != end; ++it) {
    const auto& match = *it;
    out.append(cursor, match[0].first);
    char32_t sentinel = kUrlSentinel;
    if (match[1].matched) {
      sentinel = kUrlSentinel;
    } else if (match[2].matched) {
      sentinel = kEmailSentinel;
    } else if (match[3].matched) {
      sentinel = kUserSentinel;
    } else {
      std::string literal = match.str(4);
      for (auto& c : literal) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      sentinel = literal == kEmailToken ? kEmailSentinel : literal == kUserToken ? kUserSentinel : kUrlSentinel;
    }
    if (!match[4].matched) ++replacements;
    out.push_back(' ');
    utf8::append(out, sentinel);
    out.push_back(' ');
    cursor = match[0].second;
  }
  out.append(cursor, bytes.cend());
  return utf8::decode(out);
}

struct Entity {
  std::u32string_view name;
  char32_t value;
};

constexpr Entity kEntities[] = {
    {U"amp", U'&'}, {U"lt", U'<'}, {U"gt", U'>'}, {U"quot", U'"'}, {U"apos", U'\''}, {U"nbsp", U' '},
};

std::u32string decode_entities(std::u32string_view text) {
  std::u32string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != U'&') {
      out.push_back(text[i]);
      continue;
    }
    const auto semicolon = text.find(U';', i + 1);
    if (semicolon == std::u32string_view::npos || semicolon - i > 10) {
      out.push_back(text[i]);
      continue;
    }
    const auto body = text.substr(i + 1, semicolon - i - 1);
    std::optional<char32_t> value;
    if (body.size() >= 2 && body[0] == U'#') {
      const bool hex = body[1] == U'x' || body[1] == U'X';
      char32_t cp = 0;
      bool ok = body.size() > (hex ? 2u : 1u);
      for (std::size_t k = hex ? 2 : 1; ok && k < body.size(); ++k) {
        const char32_t c = body[k];
        int digit = -1;
        if (c >= U'0' && c <= U'9') digit = static_cast<int>(c - U'0');
        else if (hex && c >= U'a' && c <= U'f') digit = static_cast<int>(c - U'a' + 10);
        else if (hex && c >= U'A' && c <= U'F') digit = static_cast<int>(c - U'A' + 10);
        if (digit < 0) ok = false;
        else cp = cp * (hex ? 16 : 10) + static_cast<char32_t>(digit);
        if (cp > 0x10FFFF) ok = false;
      }
      if (ok && cp != 0 && !(cp >= 0xD800 && cp <= 0xDFFF)) value = cp;
    } else {
      for (const auto& entity : kEntities) {
        if (body == entity.name) value = entity.value;
      }
    }
    if (!value) {
      out.push_back(text[i]);
      continue;
    }
    out.push_back(*value);
    i = semicolon;
  }
  return out;
}

bool is_ascii_alpha(char32_t c) { return (c >= U'a' && c <= U'z') || (c >= U'A' && c <= U'Z'); }

std::u32string strip_markup(std::u32string_view text) {
  std::u32string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == U'<') {
      if (text.substr(i, 4) == U"<!--") {
        const auto close = text.find(U"-->", i + 4);
        if (close != std::u32string_view::npos) {
          out.push_back(U' ');
          i = close + 2;
          continue;
        }
      }
      std::size_t name = i + 1;
      if (name < text.size() && (text[name] == U'/' || text[name] == U'!')) ++name;
      if (name < text.size() && is_ascii_alpha(text[name])) {
        std::size_t close = name;
        while (close < text.size() && text[close] != U'>' && text[close] != U'<') ++close;
        if (close < text.size() && text[close] == U'>') {
          out.push_back(U' ');
          i = close;
          continue;
        }
      }
    }
    out.push_back(text[i]);
  }
  return out;
}

bool is_space_like(char32_t c) {
  return (c >= 0x09 && c <= 0x0D) || c == 0x20 || c == 0x85 || c == 0xA0 || c == 0x1680 || (c >= 0x2000 && c <= 0x200A) ||
         c == 0x2028 || c == 0x2029 || c == 0x202F || c == 0x205F || c == 0x3000;
}

// Dropped without leaving a gap: invisible format and control characters.
bool is_invisible(char32_t c) {
  return c < 0x20 || (c >= 0x7F && c <= 0x9F) || c == 0xAD || (c >= 0x200B && c <= 0x200F) ||
         (c >= 0x202A && c <= 0x202E) || (c >= 0x2060 && c <= 0x2064) || (c >= 0x2066 && c <= 0x206F) ||
         c == 0xFEFF || (c >= 0xFE00 && c <= 0xFE0F) || c == 0x20E3 || (c >= 0xE0000 && c <= 0xE007F) ||
         (c >= 0xE0100 && c <= 0xE01EF) || c == 0xFFFD || c == 0xFFFC || (is_private_use(c) && !is_sentinel(c));
}

// Replaced by a space: emoji, pictographs, dingbats and related symbol blocks.
bool is_pictographic(char32_t c) {
  return (c >= 0x1F000 && c <= 0x1FBFF) || (c >= 0x2600 && c <= 0x27BF) || (c >= 0x2300 && c <= 0x23FF) ||
         (c >= 0x2B00 && c <= 0x2BFF) || (c >= 0x2190 && c <= 0x21FF) || (c >= 0x25A0 && c <= 0x25FF) ||
         (c >= 0x2900 && c <= 0x297F) || c == 0x00A9 || c == 0x00AE || c == 0x203C || c == 0x2049 || c == 0x2122 ||
         c == 0x2139 || c == 0x3030 || c == 0x303D || c == 0x3297 || c == 0x3299;
}

std::u32string collapse_spaces(std::u32string_view text) {
  std::u32string out;
  out.reserve(text.size());
  for (char32_t c : text) {
    if (c == U' ') {
      if (!out.empty() && out.back() != U' ') out.push_back(c);
    } else {
      out.push_back(c);
    }
  }
  if (!out.empty() && out.back() == U' ') out.pop_back();
  return out;
}

// Rule group 2.
std::u32string eliminate(std::u32string_view text) {
  std::u32string cleaned = strip_markup(decode_entities(text));

  std::u32string filtered;
  filtered.reserve(cleaned.size());
  for (char32_t c : cleaned) {
    if (is_space_like(c) || is_pictographic(c)) {
      filtered.push_back(U' ');
    } else if (!is_invisible(c)) {
      filtered.push_back(c);
    }
  }

  std::u32string collapsed;
  collapsed.reserve(filtered.size());
  std::size_t run = 0;
  for (char32_t c : filtered) {
    run = (!collapsed.empty() && collapsed.back() == c) ? run + 1 : 1;
    if (run <= 2) collapsed.push_back(c);
  }
  return collapse_spaces(collapsed);
}

enum class CharClass { Other, Digit, Arabic, Latin, Bracket, Placeholder, Space };

CharClass classify(char32_t c) {
  if (c == U' ') return CharClass::Space;
  if (is_sentinel(c)) return CharClass::Placeholder;
  if ((c >= U'0' && c <= U'9') || (c >= 0x0660 && c <= 0x0669) || (c >= 0x06F0 && c <= 0x06F9)) return CharClass::Digit;
  switch (c) {
    case U'(': case U')': case U'[': case U']': case U'{': case U'}': case 0xFD3E: case 0xFD3F:
      return CharClass::Bracket;
    default:
      break;
  }
  if (is_ascii_alpha(c) || (c >= 0x00C0 && c <= 0x024F && c != 0x00D7 && c != 0x00F7)) return CharClass::Latin;
  const bool arabic_block = (c >= 0x0610 && c <= 0x061A) || (c >= 0x0620 && c <= 0x065F) || (c >= 0x066E && c <= 0x06D3) ||
                            (c >= 0x06D5 && c <= 0x06EF) || (c >= 0x06FA && c <= 0x06FF) || (c >= 0x0750 && c <= 0x077F) ||
                            (c >= 0x08A0 && c <= 0x08FF) || (c >= 0xFB50 && c <= 0xFDFF) || (c >= 0xFE70 && c <= 0xFEFC);
  return arabic_block ? CharClass::Arabic : CharClass::Other;
}

bool is_word_class(CharClass c) { return c == CharClass::Digit || c == CharClass::Arabic || c == CharClass::Latin; }

// Rule group 3.
std::u32string correct_spacing(std::u32string_view text) {
  std::u32string out;
  out.reserve(text.size() + text.size() / 4);
  CharClass previous = CharClass::Space;
  for (char32_t c : text) {
    const CharClass current = classify(c);
    if (previous != CharClass::Space && current != CharClass::Space) {
      const bool isolate = previous == CharClass::Bracket || current == CharClass::Bracket ||
                           previous == CharClass::Placeholder || current == CharClass::Placeholder;
      const bool script_change = is_word_class(previous) && is_word_class(current) && previous != current;
      if (isolate || script_change) out.push_back(U' ');
    }
    out.push_back(c);
    previous = current;
  }
  return collapse_spaces(out);
}

std::string render(std::u32string_view text) {
  std::string out;
  out.reserve(text.size() * 2);
  for (char32_t c : text) {
    switch (c) {
      case kUrlSentinel: out.append(kUrlToken); break;
      case kEmailSentinel: out.append(kEmailToken); break;
      case kUserSentinel: out.append(kUserToken); break;
      default: utf8::append(out, c);
    }
  }
  return out;
}

std::string normalize_pass(std::string_view text, std::size_t& replacements) {
  return render(correct_spacing(eliminate(substitute_placeholders(text, replacements))));
}

}  // namespace

bool is_placeholder(std::string_view token) noexcept {
  return token == kUrlToken || token == kEmailToken || token == kUserToken;
}

NormalizedText normalize_tweet(std::string_view text) {
  NormalizedText result;
  result.text = normalize_pass(text, result.replacements);
  // Removing markup or collapsing repeats can assemble a new URL/mention
  // (e.g. "htttp://x" -> "http://x"); iterate until nothing changes.
  for (int pass = 1; pass < kMaxPasses; ++pass) {
    std::string next = normalize_pass(result.text, result.replacements);
    if (next == result.text) break;
    result.text = std::move(next);
  }
  return result;
}

}  // namespace claimcheck
