#include "curate/bloom.hpp"

#include <algorithm>
#include <cmath>

#include "curate/hash.hpp"

namespace curate {

BloomFilter::BloomFilter(std::uint64_t expected_keys, double target_fp, std::uint64_t seed)
    : target_fp_(target_fp), seed_(seed) {
    const double n = static_cast<double>(std::max<std::uint64_t>(expected_keys, 1));
    const double ln2 = std::log(2.0);
    bit_count_ = static_cast<std::uint64_t>(std::ceil(-n * std::log(target_fp) / (ln2 * ln2)));
    hash_count_ = std::max<std::uint32_t>(
        1, static_cast<std::uint32_t>(std::llround(static_cast<double>(bit_count_) / n * ln2)));
    bits_.assign((bit_count_ + 63) / 64, 0);
}

// Double hashing: probe i = h1 + i*h2 mod m. The stride is forced odd so
// probes spread even when h2 mod m degenerates.
std::uint64_t BloomFilter::probe(std::string_view key, std::uint64_t& stride) const {
    std::uint64_t h1 = hash64(key, seed_);
    stride = hash64(key, seed_ ^ 0x9E3779B97F4A7C15ULL) | 1;
    return h1;
}

bool BloomFilter::test(std::string_view key) const {
    std::uint64_t stride = 0;
    std::uint64_t h = probe(key, stride);
    for (std::uint32_t i = 0; i < hash_count_; ++i, h += stride) {
        std::uint64_t bit = h % bit_count_;
        if (!(bits_[bit / 64] & (std::uint64_t{1} << (bit % 64)))) return false;
    }
    return true;
}

void BloomFilter::insert(std::string_view key) {
    std::uint64_t stride = 0;
    std::uint64_t h = probe(key, stride);
    for (std::uint32_t i = 0; i < hash_count_; ++i, h += stride) {
        std::uint64_t bit = h % bit_count_;
        bits_[bit / 64] |= std::uint64_t{1} << (bit % 64);
    }
    ++inserted_count_;
}

bool BloomFilter::test_and_insert(std::string_view key) {
    bool present = test(key);
    if (!present) insert(key);
    return present;
}

} // namespace curate
