#include "sarcbench/unicode.hpp"

#include <algorithm>
#include <iterator>

#include "sarcbench/unicode_tables.hpp"

namespace sarcbench::uni {

namespace {

using unicode_tables::Interval;

bool in_intervals(const Interval* first, const Interval* last, char32_t cp) {
    auto it = std::upper_bound(first, last, cp, [](char32_t c, const Interval& iv) {
        return c < iv.lo;
    });
    return it != first && cp <= std::prev(it)->hi;
}

}  // namespace

std::u32string decode_utf8(std::string_view bytes) {
    std::u32string out;
    out.reserve(bytes.size());
    std::size_t i = 0;
    const auto n = bytes.size();
    while (i < n) {
        const auto b0 = static_cast<unsigned char>(bytes[i]);
        if (b0 < 0x80) {
            out.push_back(b0);
            ++i;
            continue;
        }
        int len = 0;
        char32_t cp = 0;
        char32_t min_cp = 0;
        if ((b0 & 0xE0) == 0xC0) {
            len = 2;
            cp = b0 & 0x1F;
            min_cp = 0x80;
        } else if ((b0 & 0xF0) == 0xE0) {
            len = 3;
            cp = b0 & 0x0F;
            min_cp = 0x800;
        } else if ((b0 & 0xF8) == 0xF0) {
            len = 4;
            cp = b0 & 0x07;
            min_cp = 0x10000;
        } else {
            out.push_back(kReplacementChar);
            ++i;
            continue;
        }
        bool ok = i + len <= n;
        for (int k = 1; ok && k < len; ++k) {
            const auto bk = static_cast<unsigned char>(bytes[i + k]);
            if ((bk & 0xC0) != 0x80) {
                ok = false;
            } else {
                cp = (cp << 6) | (bk & 0x3F);
            }
        }
        if (!ok || cp < min_cp || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
            out.push_back(kReplacementChar);
            ++i;  // resync one byte at a time
            continue;
        }
        out.push_back(cp);
        i += len;
    }
    return out;
}

void append_utf8(std::string& out, char32_t cp) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

std::string encode_utf8(std::u32string_view cps) {
    std::string out;
    out.reserve(cps.size());
    for (char32_t cp : cps) append_utf8(out, cp);
    return out;
}

std::string sanitize_utf8(std::string_view bytes) {
    return encode_utf8(decode_utf8(bytes));
}

bool is_word_char(char32_t cp) {
    return in_intervals(std::begin(unicode_tables::kWordChar),
                        std::end(unicode_tables::kWordChar), cp);
}

bool is_upper(char32_t cp) {
    return in_intervals(std::begin(unicode_tables::kUppercase),
                        std::end(unicode_tables::kUppercase), cp);
}

bool is_space(char32_t cp) {
    return in_intervals(std::begin(unicode_tables::kWhitespace),
                        std::end(unicode_tables::kWhitespace), cp);
}

void to_lower_append(std::u32string& out, char32_t cp) {
    for (const auto& m : unicode_tables::kLowerMulti) {
        if (m.cp == cp) {
            for (int k = 0; k < m.n; ++k) out.push_back(m.out[k]);
            return;
        }
    }
    const auto* first = std::begin(unicode_tables::kLowerRuns);
    const auto* last = std::end(unicode_tables::kLowerRuns);
    auto it = std::upper_bound(first, last, cp,
                               [](char32_t c, const unicode_tables::LowerRun& r) {
                                   return c < r.lo;
                               });
    if (it != first) {
        const auto& r = *std::prev(it);
        if (cp <= r.hi && (cp - r.lo) % static_cast<char32_t>(r.stride) == 0) {
            out.push_back(static_cast<char32_t>(static_cast<std::int64_t>(cp) + r.delta));
            return;
        }
    }
    out.push_back(cp);
}

std::u32string to_lower(std::u32string_view s) {
    std::u32string out;
    out.reserve(s.size());
    for (char32_t cp : s) to_lower_append(out, cp);
    return out;
}

}  // namespace sarcbench::uni
