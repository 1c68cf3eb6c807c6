#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "curate/document.hpp"
#include "curate/minhash.hpp"

namespace curate {

struct BandingParams {
    std::uint32_t bands = 1;
    std::uint32_t rows = 1;

    std::uint32_t k_used() const { return bands * rows; }
};

// Similarity at which the banding S-curve transitions: (1/b)^(1/r).
double approx_threshold(std::uint32_t bands, std::uint32_t rows);

// Probability that two sets with Jaccard s collide in at least one band:
// 1 - (1 - s^r)^b.
double collision_probability(double s, std::uint32_t bands, std::uint32_t rows);

// Exhaustive search over all (b, r) with b*r <= k for the pair minimizing
// the integrated error against a step threshold at tau,
//   integral_0^tau P(s) ds + integral_tau^1 (1 - P(s)) ds,
// midpoint rule with step 0.001. Ties go to the larger band count.
BandingParams select_params(std::uint32_t k, double tau);

// Band-keyed buckets over signatures. Bucket values are positions into the
// ids/sources arrays. Empty signatures are never inserted, so the empty
// sentinel cannot become a candidate.
struct LshIndex {
    BandingParams params;
    DedupScope scope = DedupScope::cross_source;
    std::uint32_t k = 0;
    std::uint64_t seed = 0;
    std::vector<std::string> ids;
    std::vector<std::string> sources;
    std::vector<std::unordered_map<std::uint64_t, std::vector<std::uint32_t>>> buckets;
};

// All signatures must share k and seed (config_error otherwise) and satisfy
// params.k_used() <= k. `sources` is positionally aligned with `signatures`;
// it may be empty when scope is cross_source.
LshIndex build_index(std::span<const MinHashSignature> signatures,
                     std::span<const std::string> sources, BandingParams params,
                     DedupScope scope);

// Each unordered pair co-occurring in at least one bucket, exactly once,
// sorted by (first id, second id). Under within_source scope, pairs spanning
// different sources are suppressed.
std::vector<std::pair<std::string, std::string>> candidate_pairs(const LshIndex& index);

} // namespace curate
