#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "curate/minhash.hpp"

namespace curate {

// JSONL signature records: {"id", "k", "seed", "mins": [...]}. The empty
// sentinel serializes as an empty mins array.
void write_sketches_jsonl(std::ostream& out, std::span<const MinHashSignature> sigs);
std::vector<MinHashSignature> read_sketches_jsonl(std::istream& in);
std::vector<MinHashSignature> read_sketches_file(const std::string& path);

// Binary sidecar, positional with the source JSONL: magic "MHSG", one
// version byte, k as little-endian uint32, then k little-endian uint64
// values per document. The empty sentinel is k words of 0xFF.
void write_sketches_binary(std::ostream& out, std::span<const MinHashSignature> sigs);
std::vector<MinHashSignature> read_sketches_binary(std::istream& in, std::uint64_t seed);

} // namespace curate
