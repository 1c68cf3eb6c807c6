#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "curate/shingle.hpp"

namespace curate {

// Length-k vector of per-permutation minima. An empty `mins` is the
// distinguished sentinel for documents with no shingles; it never matches
// any signature, including another empty one.
struct MinHashSignature {
    std::string doc_id;
    std::vector<std::uint64_t> mins;
    std::uint32_t k = 0;
    std::uint64_t seed = 0;

    bool empty() const { return mins.empty(); }
};

// mins[i] = min over shingle hashes x of perm_i(x), where perm_i is a
// bijection of the 64-bit space derived from (seed, i).
MinHashSignature minhash_signature(const ShingleSet& set, std::uint32_t k, std::uint64_t seed);

// Fraction of matching components; 0 if either side is the empty sentinel.
// Throws config_error when k or seed differ.
double estimate_jaccard(const MinHashSignature& a, const MinHashSignature& b);

} // namespace curate
