#include "curate/lsh.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "curate/errors.hpp"
#include "curate/hash.hpp"

namespace curate {

double approx_threshold(std::uint32_t bands, std::uint32_t rows) {
    return std::pow(1.0 / static_cast<double>(bands), 1.0 / static_cast<double>(rows));
}

double collision_probability(double s, std::uint32_t bands, std::uint32_t rows) {
    return 1.0 - std::pow(1.0 - std::pow(s, static_cast<double>(rows)),
                          static_cast<double>(bands));
}

namespace {

// Integrated step-function error of the S-curve, midpoint rule.
double banding_error(std::uint32_t b, std::uint32_t r, double tau) {
    constexpr double kStep = 0.001;
    double err = 0.0;
    for (int i = 0; i < 1000; ++i) {
        double s = (static_cast<double>(i) + 0.5) * kStep;
        double p = collision_probability(s, b, r);
        err += (s < tau ? p : 1.0 - p) * kStep;
    }
    return err;
}

} // namespace

BandingParams select_params(std::uint32_t k, double tau) {
    BandingParams best;
    double best_err = banding_error(1, 1, tau);
    for (std::uint32_t b = 1; b <= k; ++b) {
        for (std::uint32_t r = 1; b * r <= k; ++r) {
            double err = banding_error(b, r, tau);
            bool better = err < best_err - 1e-12 ||
                          (std::abs(err - best_err) <= 1e-12 && b > best.bands);
            if (better) {
                best = {b, r};
                best_err = err;
            }
        }
    }
    return best;
}

namespace {

// One salt per band, derived from the signature seed.
std::vector<std::uint64_t> band_salts(std::uint32_t bands, std::uint64_t seed) {
    std::vector<std::uint64_t> salts(bands);
    std::uint64_t state = seed;
    for (std::uint32_t band = 0; band < bands; ++band) salts[band] = splitmix64_next(state);
    return salts;
}

std::uint64_t band_key(const MinHashSignature& sig, std::uint32_t band, std::uint32_t rows,
                       std::uint64_t salt) {
    // Rows serialized little-endian, band salt in the hash seed.
    std::string buf;
    buf.reserve(rows * 8);
    for (std::uint32_t i = band * rows; i < (band + 1) * rows; ++i) {
        std::uint64_t v = sig.mins[i];
        for (int byte = 0; byte < 8; ++byte) buf.push_back(static_cast<char>(v >> (byte * 8)));
    }
    return hash64(buf, salt);
}

} // namespace

LshIndex build_index(std::span<const MinHashSignature> signatures,
                     std::span<const std::string> sources, BandingParams params,
                     DedupScope scope) {
    if (params.bands < 1 || params.rows < 1)
        throw config_error("build_index: bands and rows must be >= 1");
    if (scope == DedupScope::within_source && sources.size() != signatures.size())
        throw config_error("build_index: within_source scope needs one source per signature");

    LshIndex index;
    index.params = params;
    index.scope = scope;
    index.buckets.resize(params.bands);

    std::vector<std::uint64_t> salts;
    for (std::size_t i = 0; i < signatures.size(); ++i) {
        const MinHashSignature& sig = signatures[i];
        if (index.ids.empty()) {
            index.k = sig.k;
            index.seed = sig.seed;
            salts = band_salts(params.bands, sig.seed);
        } else if (sig.k != index.k || sig.seed != index.seed) {
            throw config_error("build_index: signatures mix k or seed");
        }
        if (params.k_used() > sig.k)
            throw config_error("build_index: bands*rows exceeds signature length");

        index.ids.push_back(sig.doc_id);
        index.sources.push_back(sources.empty() ? std::string{} : sources[i]);
        if (sig.empty()) continue;

        auto pos = static_cast<std::uint32_t>(index.ids.size() - 1);
        for (std::uint32_t band = 0; band < params.bands; ++band) {
            index.buckets[band][band_key(sig, band, params.rows, salts[band])].push_back(pos);
        }
    }
    return index;
}

std::vector<std::pair<std::string, std::string>> candidate_pairs(const LshIndex& index) {
    // TODO: shard the seen-pair set with a merge-dedup step once corpora
    // outgrow a single in-memory map.
    std::unordered_set<std::uint64_t> seen;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;

    for (const auto& band : index.buckets) {
        for (const auto& [key, members] : band) {
            if (members.size() < 2) continue;
            for (std::size_t i = 0; i < members.size(); ++i) {
                for (std::size_t j = i + 1; j < members.size(); ++j) {
                    std::uint32_t a = std::min(members[i], members[j]);
                    std::uint32_t b = std::max(members[i], members[j]);
                    if (index.scope == DedupScope::within_source &&
                        index.sources[a] != index.sources[b])
                        continue;
                    std::uint64_t packed = (static_cast<std::uint64_t>(a) << 32) | b;
                    if (seen.insert(packed).second) pairs.emplace_back(a, b);
                }
            }
        }
    }

    std::vector<std::pair<std::string, std::string>> out;
    out.reserve(pairs.size());
    for (auto [a, b] : pairs) {
        const std::string& ida = index.ids[a];
        const std::string& idb = index.ids[b];
        if (ida <= idb) out.emplace_back(ida, idb);
        else out.emplace_back(idb, ida);
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace curate
