#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace curate {

// One corpus record. `meta` carries every input field the pipeline does not
// interpret, in original key order, and is passed through unchanged.
struct Document {
    std::string id;
    std::string source;
    std::string text;
    std::uint64_t byte_len = 0; // UTF-8 byte length of text
    std::optional<double> score;
    nlohmann::ordered_json meta = nlohmann::ordered_json::object();
};

enum class Stage { length, exact, near, paragraph, quality };

// Execution always follows this order regardless of how the subset was given.
inline constexpr Stage kStageOrder[] = {Stage::length, Stage::exact, Stage::near,
                                        Stage::paragraph, Stage::quality};

const char* stage_name(Stage s);
std::optional<Stage> stage_from_name(const std::string& name);

enum class DedupScope { within_source, cross_source };
enum class Profile { text, code };
enum class VerifyMode { exact_sets, estimate };

struct PipelineConfig {
    std::uint64_t length_threshold = 200;
    std::uint32_t ngram_size = 13;
    std::uint32_t num_perms = 128; // 256 under the code profile
    double jaccard_threshold = 0.8; // 0.85 under the code profile
    DedupScope dedup_scope = DedupScope::cross_source;
    double quality_percentile = 0.10;
    double bloom_target_fp = 0.01;
    std::uint64_t seed = 42;
    std::vector<Stage> stages = {Stage::length, Stage::exact, Stage::near};
    Profile profile = Profile::text;

    // Banding override; both set or neither. Unset means auto-selection.
    std::optional<std::uint32_t> bands;
    std::optional<std::uint32_t> rows;

    VerifyMode verify_mode = VerifyMode::exact_sets;
};

// Normalizes the stage list to canonical order with duplicates removed.
std::vector<Stage> normalize_stages(const std::vector<Stage>& stages);

// Checks every PipelineConfig invariant; returns one message per violation,
// empty when the config is valid.
std::vector<std::string> validate_config(const PipelineConfig& cfg);

struct StageRemoval {
    std::uint64_t docs_removed = 0;
    std::uint64_t bytes_removed = 0;
};

struct CurationReport {
    std::uint64_t docs_in = 0;
    std::uint64_t docs_out = 0;
    std::uint64_t bytes_in = 0;
    std::uint64_t bytes_out = 0;
    std::map<Stage, StageRemoval> removed_by_stage;
    double pruned_doc_fraction = 0.0;
    double pruned_byte_fraction = 0.0;
    std::uint64_t cluster_count = 0;
    PipelineConfig config_echo;

    // Banding actually used by the near stage, echoed for auditability.
    std::optional<std::uint32_t> bands_used;
    std::optional<std::uint32_t> rows_used;
};

// Throws state_error unless docs/bytes balance:
//   docs_out + sum(docs_removed) == docs_in, same for bytes.
void check_report(const CurationReport& report);

nlohmann::ordered_json report_to_json(const CurationReport& report);
nlohmann::ordered_json config_to_json(const PipelineConfig& cfg);

} // namespace curate
