#include <string>

#include "doctest.h"
#include "sarcbench/unicode.hpp"

using namespace sarcbench;

TEST_CASE("utf-8 decode/encode round-trips multilingual text") {
    const std::string samples[] = {
        "plain ascii 123_",
        "café naïve résumé",
        "über straße Zürich",
        "こんにちは",
        "emoji \U0001F600\U0001F680 mix",
        "",
    };
    for (const std::string& s : samples) {
        CHECK(uni::encode_utf8(uni::decode_utf8(s)) == s);
        CHECK(uni::sanitize_utf8(s) == s);
    }
}

TEST_CASE("decode maps each invalid byte to one replacement character") {
    // stray continuation byte
    CHECK(uni::decode_utf8("\x80") == std::u32string{uni::kReplacementChar});
    // truncated two-byte sequence at end of input
    const std::u32string truncated = uni::decode_utf8("ab\xc3");
    CHECK(truncated == std::u32string{U'a', U'b', uni::kReplacementChar});
    // overlong encoding of '/' (0xC0 0xAF) must not decode to '/'
    const std::u32string overlong = uni::decode_utf8("\xc0\xaf");
    CHECK(overlong.find(U'/') == std::u32string::npos);
    for (char32_t cp : overlong) CHECK(cp == uni::kReplacementChar);
    // surrogate half D800 encoded as ED A0 80
    for (char32_t cp : uni::decode_utf8("\xed\xa0\x80")) {
        CHECK(cp == uni::kReplacementChar);
    }
    // valid text resumes after the bad byte
    const std::u32string mixed = uni::decode_utf8("a\xffz");
    REQUIRE(mixed.size() == 3);
    CHECK(mixed[0] == U'a');
    CHECK(mixed[1] == uni::kReplacementChar);
    CHECK(mixed[2] == U'z');
}

TEST_CASE("sanitize replaces invalid bytes and keeps valid ones") {
    const std::string fixed = uni::sanitize_utf8("ok\xc3меню");
    CHECK(uni::decode_utf8(fixed).size() > 0);
    CHECK(fixed.substr(0, 2) == "ok");
    CHECK(uni::sanitize_utf8("\xf0\x9f\x98\x80") == "\xf0\x9f\x98\x80");  // emoji intact
}

TEST_CASE("word character class covers letters, digits and underscore") {
    CHECK(uni::is_word_char(U'a'));
    CHECK(uni::is_word_char(U'Z'));
    CHECK(uni::is_word_char(U'0'));
    CHECK(uni::is_word_char(U'9'));
    CHECK(uni::is_word_char(U'_'));
    CHECK(uni::is_word_char(U'é'));  // é
    CHECK(uni::is_word_char(U'Ñ'));  // Ñ
    CHECK(uni::is_word_char(U'ж'));  // ж
    CHECK(uni::is_word_char(U'中'));  // 中
    CHECK_FALSE(uni::is_word_char(U' '));
    CHECK_FALSE(uni::is_word_char(U'!'));
    CHECK_FALSE(uni::is_word_char(U'-'));
    CHECK_FALSE(uni::is_word_char(U'\''));
    CHECK_FALSE(uni::is_word_char(U' '));
}

TEST_CASE("uppercase class is unicode-aware") {
    CHECK(uni::is_upper(U'A'));
    CHECK(uni::is_upper(U'W'));
    CHECK(uni::is_upper(U'É'));  // É
    CHECK(uni::is_upper(U'Ж'));  // Ж
    CHECK_FALSE(uni::is_upper(U'a'));
    CHECK_FALSE(uni::is_upper(U'é'));
    CHECK_FALSE(uni::is_upper(U'1'));
    CHECK_FALSE(uni::is_upper(U'!'));
}

TEST_CASE("space class includes unicode whitespace") {
    for (char32_t cp : {U' ', U'\t', U'\n', U'\r', U' ', U' ', U'　'}) {
        CHECK(uni::is_space(cp));
    }
    CHECK_FALSE(uni::is_space(U'x'));
    CHECK_FALSE(uni::is_space(U'_'));
    CHECK_FALSE(uni::is_space(U'​'));  // zero-width space is format, not whitespace
}

TEST_CASE("lowercase mapping handles expansion and non-latin scripts") {
    CHECK(uni::to_lower(U"WOW") == U"wow");
    CHECK(uni::to_lower(U"ÉCOLE") == U"école");
    CHECK(uni::to_lower(U"Жук") == U"жук");
    CHECK(uni::to_lower(U"mixed123_") == U"mixed123_");
    // U+0130 (İ) lowers to i + combining dot above
    CHECK(uni::to_lower(U"İ") == U"i̇");
    // already-lowercase text is unchanged
    CHECK(uni::to_lower(U"abc é") == U"abc é");
}
