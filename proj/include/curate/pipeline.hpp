#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "curate/dedup.hpp"
#include "curate/document.hpp"
#include "curate/jsonl.hpp"
#include "curate/lsh.hpp"

namespace curate {

struct RunOptions {
    unsigned workers = 1;
    bool skip_malformed = false;
};

// Result of running the configured stages over an ingested corpus.
// Outcomes preserve ingest order; emit() handles output ordering.
struct StageExecution {
    std::vector<DocOutcome> outcomes;
    std::vector<DupCluster> clusters; // exact and near, audit dump order
    std::uint64_t near_cluster_count = 0;
    std::optional<BandingParams> banding_used;
};

// Executes the stage list in canonical order. Per-document work fans out to
// `workers` threads; results are merged by index, so any worker count
// produces identical outcomes.
StageExecution run_stages(std::vector<Document> docs, const PipelineConfig& cfg,
                          unsigned workers = 1);

struct RunPaths {
    std::string input;
    std::string output;
    std::string report; // optional
    std::string drops;  // optional
};

struct RunResult {
    CurationReport report;
    std::vector<DupCluster> clusters;
    std::uint64_t malformed_skipped = 0;
};

// ingest -> run_stages -> emit (+ optional report and drop-sidecar files).
RunResult run_pipeline(const PipelineConfig& cfg, const RunPaths& paths,
                       const RunOptions& opts = {});

struct InputStats {
    std::uint64_t docs = 0;
    std::uint64_t bytes = 0;
    std::map<std::string, std::uint64_t> per_source;
    std::vector<std::pair<std::string, std::uint64_t>> word_histogram;
};

InputStats compute_stats(std::span<const Document> docs);

} // namespace curate
