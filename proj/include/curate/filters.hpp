#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>

#include "curate/document.hpp"

namespace curate {

struct FilterDecision {
    enum class Verdict { keep, drop };
    Verdict verdict = Verdict::keep;
    Stage stage = Stage::length;
    std::string detail;
};

// Removes all punctuation (categories P*) and all White_Space characters,
// keeping every other scalar in order. Input must be valid UTF-8.
std::string strip_for_length(std::string_view text);

// Count of scalars surviving strip_for_length, without building the string.
std::uint64_t stripped_length(std::string_view text);

// Drop iff stripped length < threshold ("fewer than" is strict).
FilterDecision length_filter(const Document& doc, std::uint64_t threshold);

// Keeps exactly ceil(percentile * N) documents with the highest scores, ties
// broken by ascending id. Throws input_error naming the first document
// without a score.
std::unordered_set<std::string> quality_filter(std::span<const Document> docs,
                                               double percentile);

} // namespace curate
