#pragma once

#include <string>
#include <string_view>

namespace claimcheck::utf8 {

// Invalid or truncated sequences decode to U+FFFD.
std::u32string decode(std::string_view bytes);
std::string encode(std::u32string_view text);
void append(std::string& out, char32_t cp);

}  // namespace claimcheck::utf8
