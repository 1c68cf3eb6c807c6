#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace curate {

// Strict UTF-8 decoding. Rejects overlong encodings, surrogates,
// values past U+10FFFF, and truncated sequences.
bool utf8_valid(std::string_view s);

// Decodes the scalar starting at s[pos]. On success advances pos past the
// sequence and returns the scalar; on malformed input returns -1 and leaves
// pos unchanged.
std::int32_t utf8_decode(std::string_view s, std::size_t& pos);

void utf8_append(std::string& out, char32_t cp);

// Number of Unicode scalar values in a valid UTF-8 string.
std::size_t utf8_scalar_count(std::string_view s);

// Unicode general categories Pc, Pd, Ps, Pe, Pi, Pf, Po.
bool is_punctuation(char32_t cp);

// Unicode White_Space property (subsumes space, newline, tab).
bool is_white_space(char32_t cp);

// Simple (single-scalar) lowercase mapping; identity when no mapping exists.
char32_t to_lower(char32_t cp);

} // namespace curate
