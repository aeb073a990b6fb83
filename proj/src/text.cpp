#include "corpusmix/text.hpp"

#include <algorithm>
#include <iterator>

#include "corpusmix/unicode_tables.hpp"

namespace corpusmix {

namespace {

constexpr char32_t kReplacement = 0xFFFD;

template <std::size_t N>
bool in_ranges(const detail::CpRange (&ranges)[N], char32_t cp) {
    auto it = std::upper_bound(std::begin(ranges), std::end(ranges), cp,
                               [](char32_t v, const detail::CpRange& r) { return v < r.lo; });
    if (it == std::begin(ranges))
        return false;
    --it;
    return cp <= it->hi;
}

}  // namespace

char32_t decode_utf8(std::string_view s, std::size_t& i) {
    const auto b0 = static_cast<unsigned char>(s[i]);
    std::size_t len = 0;
    char32_t cp = 0;
    if (b0 < 0x80) {
        ++i;
        return b0;
    } else if ((b0 & 0xE0) == 0xC0) {
        len = 2;
        cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
        len = 3;
        cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
        len = 4;
        cp = b0 & 0x07;
    } else {
        ++i;
        return kReplacement;
    }
    if (i + len > s.size()) {
        ++i;
        return kReplacement;
    }
    for (std::size_t k = 1; k < len; ++k) {
        const auto b = static_cast<unsigned char>(s[i + k]);
        if ((b & 0xC0) != 0x80) {
            ++i;
            return kReplacement;
        }
        cp = (cp << 6) | (b & 0x3F);
    }
    // Reject overlong encodings and out-of-range values.
    static constexpr char32_t kMin[5] = {0, 0, 0x80, 0x800, 0x10000};
    if (cp < kMin[len] || cp > 0x10FFFF) {
        ++i;
        return kReplacement;
    }
    i += len;
    return cp;
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

std::size_t count_codepoints(std::string_view s) {
    std::size_t i = 0, n = 0;
    while (i < s.size()) {
        decode_utf8(s, i);
        ++n;
    }
    return n;
}

bool is_punctuation(char32_t cp) {
    return in_ranges(detail::kPunctRanges, cp);
}

bool is_whitespace(char32_t cp) {
    return in_ranges(detail::kSpaceRanges, cp);
}

char32_t to_lower(char32_t cp) {
    auto it = std::lower_bound(std::begin(detail::kLowerMap), std::end(detail::kLowerMap), cp,
                               [](const detail::CpPair& p, char32_t v) { return p.from < v; });
    if (it != std::end(detail::kLowerMap) && it->from == cp)
        return it->to;
    return cp;
}

std::string_view trim_whitespace(std::string_view s) {
    std::size_t i = 0, begin = 0;
    std::size_t end = 0;  // one past the last non-whitespace code point
    bool seen = false;
    while (i < s.size()) {
        const std::size_t at = i;
        const char32_t cp = decode_utf8(s, i);
        if (is_whitespace(cp)) continue;
        if (!seen) {
            begin = at;
            seen = true;
        }
        end = i;
    }
    if (!seen) return {};
    return s.substr(begin, end - begin);
}

}  // namespace corpusmix
