#pragma once

#include <cstddef>
#include <string_view>

namespace golden {

struct Pair {
  std::string_view rule;
  std::string_view input;
  std::string_view expected;
  std::size_t replacements;
};

// Expected outputs written by hand from the rule descriptions.
inline constexpr Pair kPreprocessPairs[] = {
    {"url-https", "Check https://t.co/abc123 now", "Check [url] now", 1},
    {"url-www", "see www.example.com/page", "see [url]", 1},
    {"url-shortener", "bit.ly/xyz", "[url]", 1},
    {"url-two", "https://t.co/a https://t.co/b", "[url] [url]", 2},
    {"email", "mail me at a.b@example.org", "mail me at [email]", 1},
    {"mention", "@user_1 hello", "[user] hello", 1},
    {"mention-glued-arabic", "خبر@user123", "خبر [user]", 1},
    {"literal-placeholder", "[url]", "[url]", 0},
    {"retweet", "RT @AJArabic: عاجل| مقتل 5 في #ليبيا https://t.co/XyZ",
     "RT [user] : عاجل| مقتل 5 في #ليبيا [url]", 2},
    {"entity-amp", "Tom &amp; Jerry", "Tom & Jerry", 0},
    {"entity-encoded-tag", "&lt;b&gt;bold&lt;/b&gt;", "bold", 0},
    {"entity-numeric", "&#1593;&#1575;&#1580;&#1604;", "عاجل", 0},
    {"entity-unknown", "&unknown; A&B", "&unknown; A&B", 0},
    {"tag-break", "line1<br/>line2", "line 1 line 2", 0},
    {"html-comment", "<!-- c -->text", "text", 0},
    {"repeat-arabic", "رائعععععع", "رائعع", 0},
    {"repeat-latin-punct", "Goooooal!!!!!", "Gooal!!", 0},
    {"repeat-rebuilds-url", "htttp://x.com", "[url]", 1},
    {"emoji", "عاجل \U0001F602\U0001F602 خبر", "عاجل خبر", 0},
    {"emoji-zwj", "x\U0001F468\u200D\U0001F469\u200D\U0001F467y", "x y", 0},
    {"emoji-variation", "حب \u2764\uFE0F كبير", "حب كبير", 0},
    {"zero-width", "hello\u200Bworld", "helloworld", 0},
    {"whitespace", "  a\tb\nc   d  ", "a b c d", 0},
    {"digit-arabic", "سعر 100دولار", "سعر 100 دولار", 0},
    {"digit-latin", "covid19", "covid 19", 0},
    {"digit-indic", "مصاب١٢٣", "مصاب ١٢٣", 0},
    {"script-change", "كوروناcorona", "كورونا corona", 0},
    {"bracket-round", "(مهم)عاجل", "( مهم ) عاجل", 0},
    {"bracket-curly", "{x}", "{ x }", 0},
};

}  // namespace golden
