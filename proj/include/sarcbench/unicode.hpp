#pragma once

// UTF-8 decoding and the character classes the featurizer depends on.
// Classification tables are generated from Unicode data (see
// tools/gen_unicode_tables.py); byte strings throughout the toolkit are
// valid UTF-8 once they have passed through sanitize_utf8().

#include <string>
#include <string_view>

namespace sarcbench::uni {

inline constexpr char32_t kReplacementChar = 0xFFFD;

// Decodes UTF-8; every undecodable byte (overlong form, surrogate,
// out-of-range scalar, stray continuation) becomes one U+FFFD.
std::u32string decode_utf8(std::string_view bytes);

void append_utf8(std::string& out, char32_t cp);
std::string encode_utf8(std::u32string_view cps);

// decode + re-encode: output is always valid UTF-8.
std::string sanitize_utf8(std::string_view bytes);

bool is_word_char(char32_t cp);  // letter, digit or underscore
bool is_upper(char32_t cp);
bool is_space(char32_t cp);

// Full lowercase mapping (may expand to several codepoints).
void to_lower_append(std::u32string& out, char32_t cp);
std::u32string to_lower(std::u32string_view s);

}  // namespace sarcbench::uni
