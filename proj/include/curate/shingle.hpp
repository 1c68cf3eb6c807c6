#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace curate {

// Lower-cases (simple mapping), replaces punctuation with spaces, then
// splits on White_Space runs. Input must be valid UTF-8.
std::vector<std::string> tokenize_lower(std::string_view text);

// Set of 64-bit hashes of the word n-grams of one document. `hashes` is
// sorted and duplicate-free.
struct ShingleSet {
    std::string doc_id;
    std::vector<std::uint64_t> hashes;
    std::uint64_t word_count = 0;

    bool empty() const { return hashes.empty(); }
};

// Hashes each window of n consecutive words, words joined by a 0x1F
// separator so window boundaries stay unambiguous.
ShingleSet shingles(std::string doc_id, const std::vector<std::string>& words, std::uint32_t n);

// tokenize_lower + shingles in one call.
ShingleSet shingle_text(std::string doc_id, std::string_view text, std::uint32_t n);

// |a intersect b| / |a union b|; 0 when both sets are empty.
double exact_jaccard(const ShingleSet& a, const ShingleSet& b);

} // namespace curate
