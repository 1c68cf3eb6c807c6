#include "curate/document.hpp"

#include <algorithm>

#include "curate/errors.hpp"

namespace curate {

const char* stage_name(Stage s) {
    switch (s) {
        case Stage::length: return "length";
        case Stage::exact: return "exact";
        case Stage::near: return "near";
        case Stage::paragraph: return "paragraph";
        case Stage::quality: return "quality";
    }
    return "?";
}

std::optional<Stage> stage_from_name(const std::string& name) {
    for (Stage s : kStageOrder) {
        if (name == stage_name(s)) return s;
    }
    return std::nullopt;
}

std::vector<Stage> normalize_stages(const std::vector<Stage>& stages) {
    std::vector<Stage> out;
    for (Stage s : kStageOrder) {
        if (std::find(stages.begin(), stages.end(), s) != stages.end()) out.push_back(s);
    }
    return out;
}

std::vector<std::string> validate_config(const PipelineConfig& cfg) {
    std::vector<std::string> errors;

    if (cfg.ngram_size < 1) errors.push_back("ngram_size: must be >= 1");
    if (cfg.num_perms < 1) errors.push_back("num_perms: must be >= 1");
    if (!(cfg.jaccard_threshold > 0.0 && cfg.jaccard_threshold <= 1.0))
        errors.push_back("jaccard_threshold: must be in (0, 1]");
    if (!(cfg.quality_percentile > 0.0 && cfg.quality_percentile <= 1.0))
        errors.push_back("quality_percentile: must be in (0, 1]");
    if (!(cfg.bloom_target_fp > 0.0 && cfg.bloom_target_fp < 1.0))
        errors.push_back("bloom_target_fp: must be in (0, 1)");
    if (cfg.bands.has_value() != cfg.rows.has_value())
        errors.push_back("bands/rows: must be set together or not at all");
    if (cfg.bands && cfg.rows) {
        if (*cfg.bands < 1) errors.push_back("bands: must be >= 1");
        if (*cfg.rows < 1) errors.push_back("rows: must be >= 1");
        if (*cfg.bands >= 1 && *cfg.rows >= 1 &&
            std::uint64_t{*cfg.bands} * *cfg.rows > cfg.num_perms)
            errors.push_back("bands/rows: bands*rows must be <= num_perms");
    }
    if (cfg.stages.empty()) errors.push_back("stages: at least one stage required");

    return errors;
}

void check_report(const CurationReport& report) {
    std::uint64_t docs_removed = 0;
    std::uint64_t bytes_removed = 0;
    for (const auto& [stage, removal] : report.removed_by_stage) {
        docs_removed += removal.docs_removed;
        bytes_removed += removal.bytes_removed;
    }
    if (report.docs_out + docs_removed != report.docs_in)
        throw state_error("report does not balance: docs_out + removed != docs_in");
    if (report.bytes_out + bytes_removed != report.bytes_in)
        throw state_error("report does not balance: bytes_out + removed != bytes_in");
}

nlohmann::ordered_json config_to_json(const PipelineConfig& cfg) {
    nlohmann::ordered_json j;
    j["length_threshold"] = cfg.length_threshold;
    j["ngram_size"] = cfg.ngram_size;
    j["num_perms"] = cfg.num_perms;
    j["jaccard_threshold"] = cfg.jaccard_threshold;
    j["dedup_scope"] = cfg.dedup_scope == DedupScope::within_source ? "within_source" : "cross_source";
    j["quality_percentile"] = cfg.quality_percentile;
    j["bloom_target_fp"] = cfg.bloom_target_fp;
    j["seed"] = cfg.seed;
    auto stages = nlohmann::ordered_json::array();
    for (Stage s : cfg.stages) stages.push_back(stage_name(s));
    j["stages"] = std::move(stages);
    j["profile"] = cfg.profile == Profile::code ? "code" : "text";
    if (cfg.bands) j["bands"] = *cfg.bands;
    if (cfg.rows) j["rows"] = *cfg.rows;
    j["verify_mode"] = cfg.verify_mode == VerifyMode::estimate ? "estimate" : "exact";
    return j;
}

nlohmann::ordered_json report_to_json(const CurationReport& report) {
    nlohmann::ordered_json j;
    j["docs_in"] = report.docs_in;
    j["docs_out"] = report.docs_out;
    j["bytes_in"] = report.bytes_in;
    j["bytes_out"] = report.bytes_out;
    auto removed = nlohmann::ordered_json::object();
    for (Stage s : kStageOrder) {
        auto it = report.removed_by_stage.find(s);
        if (it == report.removed_by_stage.end()) continue;
        removed[stage_name(s)] = {{"docs_removed", it->second.docs_removed},
                                  {"bytes_removed", it->second.bytes_removed}};
    }
    j["removed_by_stage"] = std::move(removed);
    j["pruned_doc_fraction"] = report.pruned_doc_fraction;
    j["pruned_byte_fraction"] = report.pruned_byte_fraction;
    j["cluster_count"] = report.cluster_count;
    j["config_echo"] = config_to_json(report.config_echo);
    if (report.bands_used) j["bands_used"] = *report.bands_used;
    if (report.rows_used) j["rows_used"] = *report.rows_used;
    return j;
}

} // namespace curate
