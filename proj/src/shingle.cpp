#include "curate/shingle.hpp"

#include <algorithm>

#include "curate/errors.hpp"
#include "curate/hash.hpp"
#include "curate/unicode.hpp"

namespace curate {

namespace {
constexpr char kShingleSep = '\x1F';
constexpr std::uint64_t kShingleSeed = 0x5109D5B9C04F49ECULL;
} // namespace

std::vector<std::string> tokenize_lower(std::string_view text) {
    std::vector<std::string> words;
    std::string current;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::int32_t cp = utf8_decode(text, pos);
        if (cp < 0) throw input_error("invalid UTF-8 in text");
        auto c = static_cast<char32_t>(cp);
        if (is_white_space(c) || is_punctuation(c)) {
            if (!current.empty()) {
                words.push_back(std::move(current));
                current.clear();
            }
            continue;
        }
        utf8_append(current, to_lower(c));
    }
    if (!current.empty()) words.push_back(std::move(current));
    return words;
}

ShingleSet shingles(std::string doc_id, const std::vector<std::string>& words, std::uint32_t n) {
    ShingleSet set;
    set.doc_id = std::move(doc_id);
    set.word_count = words.size();
    if (n < 1 || words.size() < n) return set;

    const std::size_t window_count = words.size() - n + 1;
    set.hashes.reserve(window_count);

    std::string joined;
    for (std::size_t start = 0; start < window_count; ++start) {
        joined.clear();
        for (std::size_t i = 0; i < n; ++i) {
            if (i > 0) joined.push_back(kShingleSep);
            joined.append(words[start + i]);
        }
        set.hashes.push_back(hash64(joined, kShingleSeed));
    }

    std::sort(set.hashes.begin(), set.hashes.end());
    set.hashes.erase(std::unique(set.hashes.begin(), set.hashes.end()), set.hashes.end());
    return set;
}

ShingleSet shingle_text(std::string doc_id, std::string_view text, std::uint32_t n) {
    return shingles(std::move(doc_id), tokenize_lower(text), n);
}

double exact_jaccard(const ShingleSet& a, const ShingleSet& b) {
    if (a.empty() && b.empty()) return 0.0;

    // Both sides are sorted; one merge pass.
    std::size_t i = 0, j = 0, both = 0;
    while (i < a.hashes.size() && j < b.hashes.size()) {
        if (a.hashes[i] == b.hashes[j]) {
            ++both;
            ++i;
            ++j;
        } else if (a.hashes[i] < b.hashes[j]) {
            ++i;
        } else {
            ++j;
        }
    }
    const std::size_t uni = a.hashes.size() + b.hashes.size() - both;
    return static_cast<double>(both) / static_cast<double>(uni);
}

} // namespace curate
