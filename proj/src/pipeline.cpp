#include "curate/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <limits>
#include <unordered_map>

#include "curate/errors.hpp"
#include "curate/filters.hpp"
#include "curate/hash.hpp"
#include "curate/minhash.hpp"
#include "curate/shingle.hpp"
#include "curate/worker_pool.hpp"

namespace curate {

namespace {

// Documents still flowing through the pipeline, ingest order preserved.
struct LiveSet {
    std::vector<Document> docs;
    std::vector<std::uint64_t> original_bytes;
};

void drop_marked(LiveSet& live, const std::vector<std::optional<DropInfo>>& marks,
                 std::vector<DocOutcome>& finished) {
    LiveSet next;
    next.docs.reserve(live.docs.size());
    next.original_bytes.reserve(live.docs.size());
    for (std::size_t i = 0; i < live.docs.size(); ++i) {
        if (marks[i]) {
            finished.push_back(
                {std::move(live.docs[i]), live.original_bytes[i], marks[i]});
        } else {
            next.docs.push_back(std::move(live.docs[i]));
            next.original_bytes.push_back(live.original_bytes[i]);
        }
    }
    live = std::move(next);
}

void run_length_stage(LiveSet& live, const PipelineConfig& cfg, unsigned workers,
                      std::vector<DocOutcome>& finished) {
    std::vector<std::optional<DropInfo>> marks(live.docs.size());
    parallel_chunks(live.docs.size(), workers, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            FilterDecision decision = length_filter(live.docs[i], cfg.length_threshold);
            if (decision.verdict == FilterDecision::Verdict::drop)
                marks[i] = DropInfo{Stage::length, decision.detail, {}};
        }
    });
    drop_marked(live, marks, finished);
}

void apply_cluster_drops(LiveSet& live, std::span<const DupCluster> clusters, Stage stage,
                         std::vector<DocOutcome>& finished) {
    auto drops = apply_dedup(live.docs, clusters);
    std::unordered_map<std::string_view, const DropDecision*> by_id;
    by_id.reserve(drops.size());
    for (const DropDecision& d : drops) by_id.emplace(d.doc_id, &d);

    std::vector<std::optional<DropInfo>> marks(live.docs.size());
    for (std::size_t i = 0; i < live.docs.size(); ++i) {
        auto it = by_id.find(live.docs[i].id);
        if (it == by_id.end()) continue;
        const char* what = it->second->kind == ClusterKind::exact ? "exact duplicate of "
                                                                  : "near-duplicate of ";
        marks[i] = DropInfo{stage, what + it->second->survivor_id, it->second->survivor_id};
    }
    drop_marked(live, marks, finished);
}

std::vector<DupCluster> run_near_stage(LiveSet& live, const PipelineConfig& cfg,
                                       unsigned workers, BandingParams banding,
                                       std::vector<DocOutcome>& finished) {
    const std::size_t n = live.docs.size();
    std::vector<ShingleSet> sets(n);
    std::vector<MinHashSignature> sigs(n);
    std::vector<std::string> sources(n);
    parallel_chunks(n, workers, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            sets[i] = shingle_text(live.docs[i].id, live.docs[i].text, cfg.ngram_size);
            sigs[i] = minhash_signature(sets[i], cfg.num_perms, cfg.seed);
            sources[i] = live.docs[i].source;
        }
    });

    LshIndex index = build_index(sigs, sources, banding, cfg.dedup_scope);
    auto candidates = candidate_pairs(index);

    std::unordered_map<std::string_view, std::size_t> pos;
    pos.reserve(n);
    for (std::size_t i = 0; i < n; ++i) pos.emplace(live.docs[i].id, i);
    auto position_of = [&](const std::string& id) {
        auto it = pos.find(id);
        if (it == pos.end()) throw state_error("no sketch for document '" + id + "'");
        return it->second;
    };

    std::vector<char> confirmed(candidates.size(), 0);
    parallel_chunks(candidates.size(), workers, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            std::size_t a = position_of(candidates[i].first);
            std::size_t b = position_of(candidates[i].second);
            bool dup = cfg.verify_mode == VerifyMode::exact_sets
                           ? verify_pair(sets[a], sets[b], cfg.jaccard_threshold)
                           : verify_pair(sigs[a], sigs[b], cfg.jaccard_threshold);
            confirmed[i] = dup ? 1 : 0;
        }
    });

    std::vector<std::pair<std::string, std::string>> confirmed_pairs;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        if (confirmed[i]) confirmed_pairs.push_back(candidates[i]);
    }

    auto clusters = cluster_pairs(confirmed_pairs);
    apply_cluster_drops(live, clusters, Stage::near, finished);
    return clusters;
}

void run_paragraph_stage(LiveSet& live, const PipelineConfig& cfg,
                         std::vector<DocOutcome>& finished) {
    std::uint64_t expected = 0;
    for (const Document& doc : live.docs) expected += count_paragraphs(doc.text);

    std::uint64_t bloom_seed = cfg.seed;
    splitmix64_next(bloom_seed);
    BloomFilter bloom(expected, cfg.bloom_target_fp, bloom_seed);

    // Inherently sequential: first occurrence in corpus order wins.
    auto rewrites = paragraph_dedup(live.docs, bloom);

    std::vector<std::optional<DropInfo>> marks(live.docs.size());
    for (std::size_t i = 0; i < live.docs.size(); ++i) {
        if (rewrites[i].dropped) {
            marks[i] = DropInfo{Stage::paragraph,
                                "all " + std::to_string(rewrites[i].paragraphs_removed) +
                                    " paragraphs previously seen",
                                {}};
        } else if (rewrites[i].rewritten) {
            live.docs[i].text = std::move(rewrites[i].text);
            live.docs[i].byte_len = live.docs[i].text.size();
        }
    }
    drop_marked(live, marks, finished);
}

void run_quality_stage(LiveSet& live, const PipelineConfig& cfg,
                       std::vector<DocOutcome>& finished) {
    auto kept = quality_filter(live.docs, cfg.quality_percentile);
    std::vector<std::optional<DropInfo>> marks(live.docs.size());
    for (std::size_t i = 0; i < live.docs.size(); ++i) {
        if (kept.count(live.docs[i].id)) continue;
        marks[i] = DropInfo{Stage::quality,
                            "score not in top " + std::to_string(cfg.quality_percentile) +
                                " fraction",
                            {}};
    }
    drop_marked(live, marks, finished);
}

} // namespace

StageExecution run_stages(std::vector<Document> docs, const PipelineConfig& cfg,
                          unsigned workers) {
    auto stages = normalize_stages(cfg.stages);

    // Stage dependencies are checked before any processing starts.
    bool wants_quality =
        std::find(stages.begin(), stages.end(), Stage::quality) != stages.end();
    if (wants_quality) {
        for (const Document& doc : docs) {
            if (!doc.score)
                throw input_error("document '" + doc.id +
                                  "' has no score but the quality stage is enabled");
        }
    }

    StageExecution exec;
    LiveSet live;
    live.docs = std::move(docs);
    live.original_bytes.reserve(live.docs.size());
    for (const Document& doc : live.docs) live.original_bytes.push_back(doc.byte_len);
    exec.outcomes.reserve(live.docs.size());

    for (Stage stage : stages) {
        switch (stage) {
            case Stage::length:
                run_length_stage(live, cfg, workers, exec.outcomes);
                break;
            case Stage::exact: {
                auto clusters = exact_dedup(live.docs, cfg.dedup_scope);
                apply_cluster_drops(live, clusters, Stage::exact, exec.outcomes);
                exec.clusters.insert(exec.clusters.end(),
                                     std::make_move_iterator(clusters.begin()),
                                     std::make_move_iterator(clusters.end()));
                break;
            }
            case Stage::near: {
                BandingParams banding =
                    cfg.bands ? BandingParams{*cfg.bands, *cfg.rows}
                              : select_params(cfg.num_perms, cfg.jaccard_threshold);
                exec.banding_used = banding;
                auto clusters = run_near_stage(live, cfg, workers, banding, exec.outcomes);
                exec.near_cluster_count = clusters.size();
                exec.clusters.insert(exec.clusters.end(),
                                     std::make_move_iterator(clusters.begin()),
                                     std::make_move_iterator(clusters.end()));
                break;
            }
            case Stage::paragraph:
                run_paragraph_stage(live, cfg, exec.outcomes);
                break;
            case Stage::quality:
                run_quality_stage(live, cfg, exec.outcomes);
                break;
        }
    }

    for (std::size_t i = 0; i < live.docs.size(); ++i) {
        exec.outcomes.push_back(
            {std::move(live.docs[i]), live.original_bytes[i], std::nullopt});
    }
    return exec;
}

RunResult run_pipeline(const PipelineConfig& cfg, const RunPaths& paths,
                       const RunOptions& opts) {
    auto validation = validate_config(cfg);
    if (!validation.empty()) {
        std::string msg = "invalid configuration:";
        for (const std::string& e : validation) msg += "\n  - " + e;
        throw config_error(msg);
    }
    PipelineConfig normalized = cfg;
    normalized.stages = normalize_stages(cfg.stages);

    IngestResult in = ingest_file(paths.input, {.skip_malformed = opts.skip_malformed});
    StageExecution exec = run_stages(std::move(in.docs), normalized, opts.workers);

    std::ofstream out(paths.output, std::ios::binary);
    if (!out) throw io_error("cannot open output file: " + paths.output);
    std::ofstream drops;
    if (!paths.drops.empty()) {
        drops.open(paths.drops, std::ios::binary);
        if (!drops) throw io_error("cannot open drops file: " + paths.drops);
    }

    EmitSinks sinks;
    sinks.kept = &out;
    sinks.drops = paths.drops.empty() ? nullptr : &drops;
    CurationReport report = emit(exec.outcomes, normalized, exec.near_cluster_count, sinks);
    if (exec.banding_used) {
        report.bands_used = exec.banding_used->bands;
        report.rows_used = exec.banding_used->rows;
    }
    out.flush();
    if (!out) throw io_error("write failure on output file (partial output): " + paths.output);

    if (!paths.report.empty()) {
        std::ofstream report_out(paths.report, std::ios::binary);
        if (!report_out) throw io_error("cannot open report file: " + paths.report);
        report_out << report_to_json(report).dump(2) << '\n';
        if (!report_out) throw io_error("write failure on report file: " + paths.report);
    }

    RunResult result;
    result.report = std::move(report);
    result.clusters = std::move(exec.clusters);
    result.malformed_skipped = in.malformed_skipped;
    return result;
}

InputStats compute_stats(std::span<const Document> docs) {
    static constexpr struct {
        const char* label;
        std::uint64_t lo;
        std::uint64_t hi;
    } kBuckets[] = {
        {"0", 0, 0},           {"1-9", 1, 9},           {"10-99", 10, 99},
        {"100-999", 100, 999}, {"1000-9999", 1000, 9999},
        {"10000+", 10000, std::numeric_limits<std::uint64_t>::max()},
    };

    InputStats stats;
    std::uint64_t counts[std::size(kBuckets)] = {};
    for (const Document& doc : docs) {
        stats.docs += 1;
        stats.bytes += doc.byte_len;
        stats.per_source[doc.source] += 1;
        std::uint64_t words = tokenize_lower(doc.text).size();
        for (std::size_t b = 0; b < std::size(kBuckets); ++b) {
            if (words >= kBuckets[b].lo && words <= kBuckets[b].hi) {
                ++counts[b];
                break;
            }
        }
    }
    for (std::size_t b = 0; b < std::size(kBuckets); ++b)
        stats.word_histogram.emplace_back(kBuckets[b].label, counts[b]);
    return stats;
}

} // namespace curate
