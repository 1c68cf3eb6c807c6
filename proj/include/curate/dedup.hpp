#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "curate/bloom.hpp"
#include "curate/document.hpp"
#include "curate/minhash.hpp"
#include "curate/shingle.hpp"

namespace curate {

enum class ClusterKind { exact, near };

// A group of mutually-duplicate documents. member_ids is sorted; the
// survivor is the lexicographically smallest member.
struct DupCluster {
    std::vector<std::string> member_ids;
    std::string survivor_id;
    ClusterKind kind = ClusterKind::exact;
};

// Groups documents by 128-bit content hash (plus source under
// within_source scope); every group of size >= 2 becomes a cluster.
// Clusters are sorted by survivor id.
std::vector<DupCluster> exact_dedup(std::span<const Document> docs, DedupScope scope);

// Inclusive comparison: true iff similarity >= tau.
bool verify_pair(const ShingleSet& a, const ShingleSet& b, double tau);
bool verify_pair(const MinHashSignature& a, const MinHashSignature& b, double tau);

// Connected components of the confirmed-pair graph; every component is a
// cluster (pairs imply size >= 2). Sorted by survivor id.
std::vector<DupCluster> cluster_pairs(
    const std::vector<std::pair<std::string, std::string>>& pairs);

// Per-document outcome of paragraph-level dedup.
struct ParagraphRewrite {
    bool dropped = false;       // every paragraph was removed
    bool rewritten = false;     // at least one paragraph was removed
    std::string text;           // new text, only meaningful when rewritten
    std::uint64_t paragraphs_removed = 0;
};

// Splits each document on blank-line boundaries and removes every paragraph
// whose normalized form (lower-cased words joined by single spaces) was seen
// before, in corpus order. Paragraphs that normalize to nothing are kept and
// never inserted. Documents with no paragraphs pass through.
std::vector<ParagraphRewrite> paragraph_dedup(std::span<const Document> docs,
                                              BloomFilter& bloom);

// Number of blank-line-separated paragraphs, for sizing the Bloom filter.
std::uint64_t count_paragraphs(std::string_view text);

struct DropDecision {
    std::string doc_id;
    std::string survivor_id;
    ClusterKind kind;
};

// Drops every non-survivor member of every cluster. Throws state_error if a
// document appears in two clusters of the same kind.
std::vector<DropDecision> apply_dedup(std::span<const Document> docs,
                                      std::span<const DupCluster> clusters);

} // namespace curate
