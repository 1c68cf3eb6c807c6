#include "curate/hash.hpp"

namespace curate {

namespace {

inline std::uint64_t load_le64(const unsigned char* p) {
    return static_cast<std::uint64_t>(p[0]) | static_cast<std::uint64_t>(p[1]) << 8 |
           static_cast<std::uint64_t>(p[2]) << 16 | static_cast<std::uint64_t>(p[3]) << 24 |
           static_cast<std::uint64_t>(p[4]) << 32 | static_cast<std::uint64_t>(p[5]) << 40 |
           static_cast<std::uint64_t>(p[6]) << 48 | static_cast<std::uint64_t>(p[7]) << 56;
}

} // namespace

std::uint64_t hash64(const void* data, std::size_t len, std::uint64_t seed) {
    constexpr std::uint64_t m = 0xC6A4A7935BD1E995ULL;
    constexpr int r = 47;

    const auto* p = static_cast<const unsigned char*>(data);
    const unsigned char* end = p + (len & ~std::size_t{7});

    std::uint64_t h = seed ^ (static_cast<std::uint64_t>(len) * m);

    while (p != end) {
        std::uint64_t k = load_le64(p);
        p += 8;

        k *= m;
        k ^= k >> r;
        k *= m;

        h ^= k;
        h *= m;
    }

    switch (len & 7) {
        case 7: h ^= static_cast<std::uint64_t>(p[6]) << 48; [[fallthrough]];
        case 6: h ^= static_cast<std::uint64_t>(p[5]) << 40; [[fallthrough]];
        case 5: h ^= static_cast<std::uint64_t>(p[4]) << 32; [[fallthrough]];
        case 4: h ^= static_cast<std::uint64_t>(p[3]) << 24; [[fallthrough]];
        case 3: h ^= static_cast<std::uint64_t>(p[2]) << 16; [[fallthrough]];
        case 2: h ^= static_cast<std::uint64_t>(p[1]) << 8; [[fallthrough]];
        case 1: h ^= static_cast<std::uint64_t>(p[0]); h *= m; break;
        default: break;
    }

    h ^= h >> r;
    h *= m;
    h ^= h >> r;
    return h;
}

Hash128 content_hash(std::string_view text) {
    constexpr std::uint64_t kSeedHi = 0x6A09E667F3BCC908ULL;
    constexpr std::uint64_t kSeedLo = 0xBB67AE8584CAA73BULL;
    return Hash128{hash64(text, kSeedHi), hash64(text, kSeedLo)};
}

} // namespace curate
