#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "curate/dedup.hpp"
#include "curate/document.hpp"

namespace curate {

struct IngestOptions {
    // skip-and-count malformed lines instead of aborting. Duplicate ids and
    // the errors they mask always abort.
    bool skip_malformed = false;
};

struct IngestResult {
    std::vector<Document> docs; // input order
    std::uint64_t lines_read = 0;
    std::uint64_t malformed_skipped = 0;
};

// Reads JSON Lines records with at least id, source, text. byte_len is
// computed; score is taken from the record when present; every other field
// lands in meta in original order. Pipeline-owned fields (curation,
// byte_len) are recomputed, never read.
IngestResult ingest(std::istream& in, const IngestOptions& opts = {});
IngestResult ingest_file(const std::string& path, const IngestOptions& opts = {});

nlohmann::ordered_json document_to_json(const Document& doc);
Document document_from_json(const nlohmann::ordered_json& record, std::uint64_t line = 0);

struct DropInfo {
    Stage stage = Stage::length;
    std::string reason;
    std::string cluster; // survivor id, dedup drops only
};

// Final state of one ingested document after all stages ran.
struct DocOutcome {
    Document doc;                    // text possibly rewritten by paragraph dedup
    std::uint64_t original_bytes = 0;
    std::optional<DropInfo> drop;
};

struct EmitSinks {
    std::ostream* kept = nullptr;  // required
    std::ostream* drops = nullptr; // optional sidecar
};

// Writes kept documents in ascending id order with a curation annotation,
// the optional drop sidecar in the same order, and assembles the balanced
// CurationReport. Byte deltas of kept-but-rewritten documents are attributed
// to the paragraph stage.
CurationReport emit(std::span<const DocOutcome> outcomes, const PipelineConfig& config,
                    std::uint64_t near_cluster_count, EmitSinks sinks);

} // namespace curate
