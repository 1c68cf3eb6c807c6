#include "curate/config_file.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "curate/errors.hpp"

namespace curate {

namespace {

std::string trim(const std::string& s) {
    auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return {};
    auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
    std::uint64_t out = 0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size())
        throw config_error(key + ": expected unsigned integer, got '" + value + "'");
    return out;
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        double out = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return out;
    } catch (const std::exception&) {
        throw config_error(key + ": expected number, got '" + value + "'");
    }
}

std::vector<Stage> parse_stages(const std::string& value) {
    std::vector<Stage> stages;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        auto stage = stage_from_name(item);
        if (!stage) throw config_error("stages: unknown stage '" + item + "'");
        stages.push_back(*stage);
    }
    if (stages.empty()) throw config_error("stages: list is empty");
    return stages;
}

} // namespace

std::map<std::string, std::string> parse_config_text(std::istream& in) {
    std::map<std::string, std::string> keys;
    std::string line;
    std::uint64_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw config_error("config line " + std::to_string(line_no) +
                               ": expected 'key = value'");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw config_error("config line " + std::to_string(line_no) + ": empty key");
        keys[key] = value;
    }
    return keys;
}

std::map<std::string, std::string> parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open config file: " + path);
    return parse_config_text(in);
}

PipelineConfig apply_config_overrides(PipelineConfig base,
                                      const std::map<std::string, std::string>& keys) {
    if (auto it = keys.find("profile"); it != keys.end()) {
        if (it->second == "code") {
            base.profile = Profile::code;
            base.num_perms = 256;
            base.jaccard_threshold = 0.85;
        } else if (it->second == "text") {
            base.profile = Profile::text;
            base.num_perms = 128;
            base.jaccard_threshold = 0.8;
        } else {
            throw config_error("profile: expected 'text' or 'code', got '" + it->second + "'");
        }
    }

    for (const auto& [key, value] : keys) {
        if (key == "profile") continue; // handled above
        if (key == "length_threshold") {
            base.length_threshold = parse_u64(key, value);
        } else if (key == "ngram_size") {
            base.ngram_size = static_cast<std::uint32_t>(parse_u64(key, value));
        } else if (key == "num_perms") {
            base.num_perms = static_cast<std::uint32_t>(parse_u64(key, value));
        } else if (key == "jaccard_threshold") {
            base.jaccard_threshold = parse_double(key, value);
        } else if (key == "dedup_scope") {
            if (value == "within_source" || value == "within") {
                base.dedup_scope = DedupScope::within_source;
            } else if (value == "cross_source" || value == "cross") {
                base.dedup_scope = DedupScope::cross_source;
            } else {
                throw config_error("dedup_scope: expected within_source or cross_source");
            }
        } else if (key == "quality_percentile") {
            base.quality_percentile = parse_double(key, value);
        } else if (key == "bloom_target_fp") {
            base.bloom_target_fp = parse_double(key, value);
        } else if (key == "seed") {
            base.seed = parse_u64(key, value);
        } else if (key == "stages") {
            base.stages = parse_stages(value);
        } else if (key == "bands") {
            base.bands = static_cast<std::uint32_t>(parse_u64(key, value));
        } else if (key == "rows") {
            base.rows = static_cast<std::uint32_t>(parse_u64(key, value));
        } else if (key == "verify_mode") {
            if (value == "exact") {
                base.verify_mode = VerifyMode::exact_sets;
            } else if (value == "estimate") {
                base.verify_mode = VerifyMode::estimate;
            } else {
                throw config_error("verify_mode: expected 'exact' or 'estimate'");
            }
        } else {
            throw config_error("unknown config key '" + key + "'");
        }
    }
    return base;
}

PipelineConfig build_config(const std::map<std::string, std::string>& file_keys,
                            const std::map<std::string, std::string>& cli_keys) {
    // CLI wins: merge CLI keys over file keys, then resolve profile first.
    std::map<std::string, std::string> merged = file_keys;
    for (const auto& [key, value] : cli_keys) merged[key] = value;

    // An explicit num_perms/jaccard_threshold must beat the profile rebase
    // even when the profile comes from the other layer.
    PipelineConfig cfg = apply_config_overrides(PipelineConfig{}, merged);
    cfg.stages = normalize_stages(cfg.stages);

    auto errors = validate_config(cfg);
    if (!errors.empty()) {
        std::string msg = "invalid configuration:";
        for (const std::string& e : errors) msg += "\n  - " + e;
        throw config_error(msg);
    }
    return cfg;
}

} // namespace curate
