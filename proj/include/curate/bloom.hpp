#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace curate {

// Bit-array membership sketch sized for an expected key count and target
// false-positive rate. Inserted keys always test positive.
class BloomFilter {
public:
    // m = ceil(-n * ln(eps) / ln(2)^2), h = round((m/n) * ln 2), h >= 1.
    BloomFilter(std::uint64_t expected_keys, double target_fp, std::uint64_t seed);

    // True if the key was possibly inserted before.
    bool test(std::string_view key) const;

    void insert(std::string_view key);

    // test-then-insert in one pass; returns the pre-insert test result.
    bool test_and_insert(std::string_view key);

    std::uint64_t bit_count() const { return bit_count_; }
    std::uint32_t hash_count() const { return hash_count_; }
    double target_fp() const { return target_fp_; }
    std::uint64_t inserted_count() const { return inserted_count_; }

private:
    std::uint64_t probe(std::string_view key, std::uint64_t& stride) const;

    std::uint64_t bit_count_;
    std::uint32_t hash_count_;
    double target_fp_;
    std::uint64_t inserted_count_ = 0;
    std::uint64_t seed_;
    std::vector<std::uint64_t> bits_;
};

} // namespace curate
