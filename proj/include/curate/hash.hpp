#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string_view>

namespace curate {

// 64-bit finalizer used as a bijective mixer. Applying it to (x ^ key) is a
// permutation of the 64-bit space, which is what the MinHash permutation
// family relies on.
inline constexpr std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ULL;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBULL;
    x ^= x >> 31;
    return x;
}

// splitmix64 step: advances the state and returns the next value in the
// sequence. Used to derive per-permutation keys and salts from one seed.
inline constexpr std::uint64_t splitmix64_next(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    return mix64(state);
}

// MurmurHash64A over a byte range. Bytes are assembled little-endian with
// explicit shifts so the result is identical on any platform.
std::uint64_t hash64(const void* data, std::size_t len, std::uint64_t seed);

inline std::uint64_t hash64(std::string_view s, std::uint64_t seed) {
    return hash64(s.data(), s.size(), seed);
}

// 128-bit content hash: two independent 64-bit passes with fixed seeds.
// Seedless by contract so exact-dedup grouping is reproducible everywhere.
struct Hash128 {
    std::uint64_t hi = 0;
    std::uint64_t lo = 0;

    friend bool operator==(const Hash128&, const Hash128&) = default;
};

Hash128 content_hash(std::string_view text);

struct Hash128Hasher {
    std::size_t operator()(const Hash128& h) const {
        return static_cast<std::size_t>(h.hi ^ (h.lo * 0x9E3779B97F4A7C15ULL));
    }
};

} // namespace curate
