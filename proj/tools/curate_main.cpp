// curate: corpus curation and near-deduplication CLI.
//
// Subcommands: run (full pipeline), stats, validate, filter, sketch, index,
// dedup. Exit codes: 0 success, 2 invalid configuration, 3 I/O failure,
// 4 malformed input record.

#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "curate/config_file.hpp"
#include "curate/document.hpp"
#include "curate/errors.hpp"
#include "curate/jsonl.hpp"
#include "curate/lsh.hpp"
#include "curate/pipeline.hpp"
#include "curate/sketch_io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;
constexpr int kExitInput = 4;

// CLI values land here as strings so that "explicitly set" is observable;
// only set flags override config-file keys.
struct CliOverrides {
    std::map<std::string, std::string> keys;
};

void add_config_flags(CLI::App* cmd, CliOverrides& over) {
    auto bind = [cmd, &over](const std::string& flag, const std::string& key,
                             const std::string& help) {
        cmd->add_option_function<std::string>(
               flag, [key, &over](const std::string& v) { over.keys[key] = v; }, help)
            ->expected(1);
    };
    bind("--length-threshold", "length_threshold", "Minimum stripped character count");
    bind("--ngram", "ngram_size", "Shingle width in words");
    bind("--num-perm", "num_perms", "MinHash permutation count");
    bind("--threshold", "jaccard_threshold", "Jaccard similarity threshold");
    bind("--scope", "dedup_scope", "Dedup scope: within_source or cross_source");
    bind("--quality-top", "quality_percentile", "Keep the top fraction by score");
    bind("--bloom-fp", "bloom_target_fp", "Bloom filter target false-positive rate");
    bind("--seed", "seed", "64-bit seed for all hashing");
    bind("--stages", "stages", "Comma-separated stage list (length,exact,near,paragraph,quality)");
    bind("--profile", "profile", "Parameter profile: text (k=128, t=0.8) or code (k=256, t=0.85)");
    bind("--bands", "bands", "LSH band count (overrides auto-selection; needs --rows)");
    bind("--rows", "rows", "LSH rows per band (overrides auto-selection; needs --bands)");
    bind("--verify", "verify_mode", "Candidate verification: exact or estimate");
}

curate::PipelineConfig make_config(const std::string& config_path, const CliOverrides& over) {
    std::map<std::string, std::string> file_keys;
    if (!config_path.empty()) file_keys = curate::parse_config_file(config_path);
    return curate::build_config(file_keys, over.keys);
}

int run_guarded(const std::function<int()>& fn) {
    try {
        return fn();
    } catch (const curate::config_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const curate::io_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const curate::input_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 1;
    }
}

void print_report_summary(const curate::CurationReport& report) {
    std::cerr << "docs: " << report.docs_in << " in, " << report.docs_out << " out; bytes: "
              << report.bytes_in << " in, " << report.bytes_out << " out ("
              << report.pruned_byte_fraction * 100.0 << "% pruned)\n";
    for (const auto& [stage, removal] : report.removed_by_stage) {
        std::cerr << "  " << curate::stage_name(stage) << ": " << removal.docs_removed
                  << " docs, " << removal.bytes_removed << " bytes removed\n";
    }
}

void write_cluster_dump(const std::string& path,
                        std::span<const curate::DupCluster> clusters) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw curate::io_error("cannot open cluster dump: " + path);
    for (const auto& cluster : clusters) {
        out << (cluster.kind == curate::ClusterKind::exact ? "exact" : "near") << '\t'
            << cluster.survivor_id;
        for (const auto& member : cluster.member_ids) out << '\t' << member;
        out << '\n';
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Corpus curation and near-deduplication toolkit"};
    app.require_subcommand(1);

    // run
    auto* run = app.add_subcommand("run", "Run the configured pipeline over a JSONL corpus");
    std::string run_config, run_input, run_output, run_report, run_drops;
    unsigned run_workers = 1;
    std::string run_on_malformed = "abort";
    CliOverrides run_over;
    run->add_option("--config", run_config, "Config file (key = value lines)");
    run->add_option("input", run_input, "Input JSONL file")->required();
    run->add_option("-o,--output", run_output, "Output JSONL file")->required();
    run->add_option("--workers", run_workers, "Worker thread count (does not change output)");
    run->add_option("--report", run_report, "Write the curation report JSON here");
    run->add_option("--drops", run_drops, "Write dropped records JSONL here");
    run->add_option("--on-malformed", run_on_malformed, "abort (default) or skip")
        ->check(CLI::IsMember({"abort", "skip"}));
    add_config_flags(run, run_over);

    // stats
    auto* stats_cmd = app.add_subcommand("stats", "Print corpus statistics (read-only)");
    std::string stats_input;
    stats_cmd->add_option("input", stats_input, "Input JSONL file")->required();

    // validate
    auto* validate = app.add_subcommand("validate", "Validate a configuration without reading data");
    std::string validate_config_path;
    CliOverrides validate_over;
    validate->add_option("--config", validate_config_path, "Config file to check");
    add_config_flags(validate, validate_over);

    // filter
    auto* filter = app.add_subcommand("filter", "Run only the filter stages (length, quality)");
    std::string filter_input, filter_output, filter_report, filter_drops;
    CliOverrides filter_over;
    bool filter_quality = false;
    filter->add_option("input", filter_input, "Input JSONL file")->required();
    filter->add_option("-o,--output", filter_output, "Output JSONL file")->required();
    filter->add_option("--report", filter_report, "Write the curation report JSON here");
    filter->add_option("--drops", filter_drops, "Write dropped records JSONL here");
    filter->add_flag("--quality", filter_quality, "Also run the quality percentile stage");
    add_config_flags(filter, filter_over);

    // sketch
    auto* sketch = app.add_subcommand("sketch", "Write MinHash signatures for each document");
    std::string sketch_input, sketch_output, sketch_binary;
    CliOverrides sketch_over;
    sketch->add_option("input", sketch_input, "Input JSONL file")->required();
    sketch->add_option("-o,--output", sketch_output, "Signature JSONL output");
    sketch->add_option("--binary", sketch_binary, "Binary signature sidecar (MHSG format)");
    add_config_flags(sketch, sketch_over);

    // index
    auto* index_cmd = app.add_subcommand("index", "Band signatures and dump candidate pairs");
    std::string index_input, index_sketches, index_pairs;
    CliOverrides index_over;
    index_cmd->add_option("input", index_input, "Input JSONL file")->required();
    index_cmd->add_option("--sketches", index_sketches,
                          "Reuse signatures from a sketch file instead of recomputing");
    index_cmd->add_option("-o,--pairs", index_pairs, "Candidate pair TSV (default stdout)");
    add_config_flags(index_cmd, index_over);

    // dedup
    auto* dedup_cmd = app.add_subcommand("dedup", "Run only the dedup stages");
    std::string dedup_input, dedup_output, dedup_report, dedup_drops, dedup_clusters;
    std::string dedup_mode = "both";
    bool dedup_paragraph = false;
    unsigned dedup_workers = 1;
    CliOverrides dedup_over;
    dedup_cmd->add_option("input", dedup_input, "Input JSONL file")->required();
    dedup_cmd->add_option("-o,--output", dedup_output, "Output JSONL file")->required();
    dedup_cmd->add_option("--mode", dedup_mode, "exact, near, or both (default both)")
        ->check(CLI::IsMember({"exact", "near", "both"}));
    dedup_cmd->add_flag("--paragraph", dedup_paragraph, "Also run Bloom paragraph dedup");
    dedup_cmd->add_option("--workers", dedup_workers, "Worker thread count");
    dedup_cmd->add_option("--report", dedup_report, "Write the curation report JSON here");
    dedup_cmd->add_option("--drops", dedup_drops, "Write dropped records JSONL here");
    dedup_cmd->add_option("--clusters", dedup_clusters,
                          "Cluster audit dump TSV: kind, survivor, members...");
    add_config_flags(dedup_cmd, dedup_over);

    CLI11_PARSE(app, argc, argv);

    if (run->parsed()) {
        return run_guarded([&] {
            auto cfg = make_config(run_config, run_over);
            curate::RunOptions opts{run_workers, run_on_malformed == "skip"};
            auto result = curate::run_pipeline(
                cfg, {run_input, run_output, run_report, run_drops}, opts);
            if (result.malformed_skipped > 0)
                std::cerr << "skipped " << result.malformed_skipped << " malformed line(s)\n";
            print_report_summary(result.report);
            return kExitOk;
        });
    }

    if (stats_cmd->parsed()) {
        return run_guarded([&] {
            auto in = curate::ingest_file(stats_input);
            auto stats = curate::compute_stats(in.docs);
            std::cout << "docs: " << stats.docs << "\nbytes: " << stats.bytes << '\n';
            std::cout << "sources:\n";
            for (const auto& [source, count] : stats.per_source)
                std::cout << "  " << source << ": " << count << '\n';
            std::cout << "word-count histogram:\n";
            for (const auto& [bucket, count] : stats.word_histogram)
                std::cout << "  " << bucket << ": " << count << '\n';
            return kExitOk;
        });
    }

    if (validate->parsed()) {
        return run_guarded([&] {
            make_config(validate_config_path, validate_over);
            std::cout << "ok\n";
            return kExitOk;
        });
    }

    if (filter->parsed()) {
        return run_guarded([&] {
            CliOverrides over = filter_over;
            bool wants_quality = filter_quality || over.keys.count("quality_percentile");
            bool wants_length = over.keys.count("length_threshold") || !wants_quality;
            std::string stages;
            if (wants_length) stages = "length";
            if (wants_quality) stages += stages.empty() ? "quality" : ",quality";
            over.keys["stages"] = stages;
            auto cfg = make_config("", over);
            auto result = curate::run_pipeline(
                cfg, {filter_input, filter_output, filter_report, filter_drops});
            print_report_summary(result.report);
            return kExitOk;
        });
    }

    if (sketch->parsed()) {
        return run_guarded([&] {
            auto cfg = make_config("", sketch_over);
            auto in = curate::ingest_file(sketch_input);
            std::vector<curate::MinHashSignature> sigs;
            sigs.reserve(in.docs.size());
            for (const auto& doc : in.docs) {
                auto set = curate::shingle_text(doc.id, doc.text, cfg.ngram_size);
                sigs.push_back(curate::minhash_signature(set, cfg.num_perms, cfg.seed));
            }
            if (!sketch_output.empty()) {
                std::ofstream out(sketch_output, std::ios::binary);
                if (!out) throw curate::io_error("cannot open output file: " + sketch_output);
                curate::write_sketches_jsonl(out, sigs);
            } else if (sketch_binary.empty()) {
                curate::write_sketches_jsonl(std::cout, sigs);
            }
            if (!sketch_binary.empty()) {
                std::ofstream out(sketch_binary, std::ios::binary);
                if (!out) throw curate::io_error("cannot open output file: " + sketch_binary);
                curate::write_sketches_binary(out, sigs);
            }
            return kExitOk;
        });
    }

    if (index_cmd->parsed()) {
        return run_guarded([&] {
            auto cfg = make_config("", index_over);
            auto in = curate::ingest_file(index_input);

            std::vector<curate::MinHashSignature> sigs;
            if (!index_sketches.empty()) {
                sigs = curate::read_sketches_file(index_sketches);
                if (sigs.size() != in.docs.size())
                    throw curate::input_error("sketch file has " + std::to_string(sigs.size()) +
                                              " records for " + std::to_string(in.docs.size()) +
                                              " documents");
            } else {
                sigs.reserve(in.docs.size());
                for (const auto& doc : in.docs) {
                    auto set = curate::shingle_text(doc.id, doc.text, cfg.ngram_size);
                    sigs.push_back(curate::minhash_signature(set, cfg.num_perms, cfg.seed));
                }
            }

            std::vector<std::string> sources;
            sources.reserve(in.docs.size());
            for (const auto& doc : in.docs) sources.push_back(doc.source);

            curate::BandingParams banding =
                cfg.bands ? curate::BandingParams{*cfg.bands, *cfg.rows}
                          : curate::select_params(cfg.num_perms, cfg.jaccard_threshold);
            auto index = curate::build_index(sigs, sources, banding, cfg.dedup_scope);
            auto pairs = curate::candidate_pairs(index);

            std::ofstream file;
            std::ostream* out = &std::cout;
            if (!index_pairs.empty()) {
                file.open(index_pairs, std::ios::binary);
                if (!file) throw curate::io_error("cannot open output file: " + index_pairs);
                out = &file;
            }
            for (const auto& [a, b] : pairs) *out << a << '\t' << b << '\n';
            std::cerr << "bands=" << banding.bands << " rows=" << banding.rows
                      << " candidates=" << pairs.size() << '\n';
            return kExitOk;
        });
    }

    if (dedup_cmd->parsed()) {
        return run_guarded([&] {
            CliOverrides over = dedup_over;
            std::string stages;
            if (dedup_mode == "exact" || dedup_mode == "both") stages = "exact";
            if (dedup_mode == "near" || dedup_mode == "both")
                stages += stages.empty() ? "near" : ",near";
            if (dedup_paragraph) stages += ",paragraph";
            over.keys["stages"] = stages;
            auto cfg = make_config("", over);
            auto result = curate::run_pipeline(
                cfg, {dedup_input, dedup_output, dedup_report, dedup_drops},
                {dedup_workers, false});
            if (!dedup_clusters.empty()) write_cluster_dump(dedup_clusters, result.clusters);
            print_report_summary(result.report);
            return kExitOk;
        });
    }

    return kExitOk;
}
