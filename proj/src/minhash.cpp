#include "curate/minhash.hpp"

#include <limits>

#include "curate/errors.hpp"
#include "curate/hash.hpp"

namespace curate {

MinHashSignature minhash_signature(const ShingleSet& set, std::uint32_t k, std::uint64_t seed) {
    MinHashSignature sig;
    sig.doc_id = set.doc_id;
    sig.k = k;
    sig.seed = seed;
    if (set.empty() || k < 1) return sig;

    std::vector<std::uint64_t> keys(k);
    std::uint64_t state = seed;
    for (std::uint32_t i = 0; i < k; ++i) keys[i] = splitmix64_next(state);

    sig.mins.assign(k, std::numeric_limits<std::uint64_t>::max());
    for (std::uint64_t x : set.hashes) {
        for (std::uint32_t i = 0; i < k; ++i) {
            std::uint64_t h = mix64(x ^ keys[i]);
            if (h < sig.mins[i]) sig.mins[i] = h;
        }
    }
    return sig;
}

double estimate_jaccard(const MinHashSignature& a, const MinHashSignature& b) {
    if (a.k != b.k) throw config_error("estimate_jaccard: signatures have different k");
    if (a.seed != b.seed) throw config_error("estimate_jaccard: signatures have different seeds");
    if (a.empty() || b.empty()) return 0.0;

    std::size_t matches = 0;
    for (std::size_t i = 0; i < a.mins.size(); ++i) {
        if (a.mins[i] == b.mins[i]) ++matches;
    }
    return static_cast<double>(matches) / static_cast<double>(a.mins.size());
}

} // namespace curate
