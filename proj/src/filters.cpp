#include "curate/filters.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "curate/errors.hpp"
#include "curate/unicode.hpp"

namespace curate {

std::string strip_for_length(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::int32_t cp = utf8_decode(text, pos);
        if (cp < 0) throw input_error("invalid UTF-8 in text");
        auto c = static_cast<char32_t>(cp);
        if (is_punctuation(c) || is_white_space(c)) continue;
        utf8_append(out, c);
    }
    return out;
}

std::uint64_t stripped_length(std::string_view text) {
    std::uint64_t count = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::int32_t cp = utf8_decode(text, pos);
        if (cp < 0) throw input_error("invalid UTF-8 in text");
        auto c = static_cast<char32_t>(cp);
        if (!is_punctuation(c) && !is_white_space(c)) ++count;
    }
    return count;
}

FilterDecision length_filter(const Document& doc, std::uint64_t threshold) {
    std::uint64_t len = stripped_length(doc.text);
    if (len < threshold) {
        return {FilterDecision::Verdict::drop, Stage::length,
                "stripped length " + std::to_string(len) + " < " + std::to_string(threshold)};
    }
    return {FilterDecision::Verdict::keep, Stage::length,
            "stripped length " + std::to_string(len)};
}

std::unordered_set<std::string> quality_filter(std::span<const Document> docs,
                                               double percentile) {
    for (const Document& doc : docs) {
        if (!doc.score) {
            throw input_error("document '" + doc.id +
                              "' has no score; quality filtering needs scored input");
        }
    }

    const std::size_t n = docs.size();
    std::unordered_set<std::string> kept;
    if (n == 0) return kept;

    auto keep_count = static_cast<std::size_t>(std::ceil(percentile * static_cast<double>(n)));
    keep_count = std::min(keep_count, n);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (*docs[a].score != *docs[b].score) return *docs[a].score > *docs[b].score;
        return docs[a].id < docs[b].id;
    });

    kept.reserve(keep_count);
    for (std::size_t i = 0; i < keep_count; ++i) kept.insert(docs[order[i]].id);
    return kept;
}

} // namespace curate
