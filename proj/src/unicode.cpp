#include "curate/unicode.hpp"

#include <algorithm>
#include <array>
#include <iterator>

namespace curate {

namespace {

struct CodepointRange {
    std::uint32_t lo;
    std::uint32_t hi;
};

struct LowercasePair {
    std::uint32_t cp;
    std::uint32_t lower;
};

#include "unicode_tables.inc"

template <std::size_t N>
bool range_contains(const CodepointRange (&ranges)[N], char32_t cp) {
    auto it = std::upper_bound(std::begin(ranges), std::end(ranges), cp,
                               [](char32_t v, const CodepointRange& r) { return v < r.lo; });
    return it != std::begin(ranges) && cp <= std::prev(it)->hi;
}

// ASCII fast paths; the tables only see non-ASCII input.
constexpr bool ascii_punct(char32_t cp) {
    return (cp >= '!' && cp <= '#') || (cp >= '%' && cp <= '*') || (cp >= ',' && cp <= '/') ||
           cp == ':' || cp == ';' || cp == '?' || cp == '@' || (cp >= '[' && cp <= ']') ||
           cp == '_' || cp == '{' || cp == '}';
}

constexpr bool ascii_space(char32_t cp) {
    return cp == ' ' || (cp >= 0x09 && cp <= 0x0D);
}

} // namespace

bool is_punctuation(char32_t cp) {
    if (cp < 0x80) return ascii_punct(cp);
    return range_contains(kPunctRanges, cp);
}

bool is_white_space(char32_t cp) {
    if (cp < 0x80) return ascii_space(cp);
    return range_contains(kWhitespaceRanges, cp);
}

char32_t to_lower(char32_t cp) {
    if (cp < 0x80) {
        if (cp >= 'A' && cp <= 'Z') return cp + 0x20;
        return cp;
    }
    auto it = std::lower_bound(std::begin(kLowercasePairs), std::end(kLowercasePairs), cp,
                               [](const LowercasePair& p, char32_t v) { return p.cp < v; });
    if (it != std::end(kLowercasePairs) && it->cp == cp) return it->lower;
    return cp;
}

std::int32_t utf8_decode(std::string_view s, std::size_t& pos) {
    if (pos >= s.size()) return -1;
    const auto* p = reinterpret_cast<const unsigned char*>(s.data()) + pos;
    const std::size_t avail = s.size() - pos;
    const unsigned char b0 = p[0];

    if (b0 < 0x80) {
        pos += 1;
        return b0;
    }

    std::size_t len;
    std::uint32_t cp;
    if ((b0 & 0xE0) == 0xC0) {
        len = 2;
        cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
        len = 3;
        cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
        len = 4;
        cp = b0 & 0x07;
    } else {
        return -1;
    }
    if (avail < len) return -1;

    for (std::size_t i = 1; i < len; ++i) {
        if ((p[i] & 0xC0) != 0x80) return -1;
        cp = (cp << 6) | (p[i] & 0x3F);
    }

    static constexpr std::uint32_t kMinForLen[5] = {0, 0, 0x80, 0x800, 0x10000};
    if (cp < kMinForLen[len]) return -1;                 // overlong
    if (cp >= 0xD800 && cp <= 0xDFFF) return -1;         // surrogate
    if (cp > 0x10FFFF) return -1;

    pos += len;
    return static_cast<std::int32_t>(cp);
}

bool utf8_valid(std::string_view s) {
    std::size_t pos = 0;
    while (pos < s.size()) {
        if (utf8_decode(s, pos) < 0) return false;
    }
    return true;
}

void utf8_append(std::string& out, char32_t cp) {
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

std::size_t utf8_scalar_count(std::string_view s) {
    std::size_t count = 0;
    for (char c : s) {
        if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) ++count;
    }
    return count;
}

} // namespace curate
