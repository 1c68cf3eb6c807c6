#include "curate/jsonl.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_set>

#include "curate/errors.hpp"
#include "curate/unicode.hpp"

namespace curate {

Document document_from_json(const nlohmann::ordered_json& record, std::uint64_t line) {
    if (!record.is_object()) throw input_error("record is not a JSON object", line);

    Document doc;
    for (const char* field : {"id", "source", "text"}) {
        auto it = record.find(field);
        if (it == record.end() || !it->is_string())
            throw input_error("missing or non-string field '" + std::string(field) + "'", line);
    }
    doc.id = record["id"].get<std::string>();
    doc.source = record["source"].get<std::string>();
    doc.text = record["text"].get<std::string>();
    if (!utf8_valid(doc.text))
        throw input_error("invalid UTF-8 in text of '" + doc.id + "'", line);
    doc.byte_len = doc.text.size();

    if (auto it = record.find("score"); it != record.end()) {
        if (!it->is_number()) throw input_error("field 'score' is not a number", line);
        doc.score = it->get<double>();
    }

    for (auto it = record.begin(); it != record.end(); ++it) {
        const std::string& key = it.key();
        if (key == "id" || key == "source" || key == "text" || key == "score" ||
            key == "byte_len" || key == "curation")
            continue;
        doc.meta[key] = it.value();
    }
    return doc;
}

nlohmann::ordered_json document_to_json(const Document& doc) {
    nlohmann::ordered_json j;
    j["id"] = doc.id;
    j["source"] = doc.source;
    j["text"] = doc.text;
    j["byte_len"] = doc.byte_len;
    if (doc.score) j["score"] = *doc.score;
    for (auto it = doc.meta.begin(); it != doc.meta.end(); ++it) j[it.key()] = it.value();
    return j;
}

IngestResult ingest(std::istream& in, const IngestOptions& opts) {
    IngestResult result;
    std::unordered_set<std::string> seen_ids;
    std::string line;
    while (std::getline(in, line)) {
        ++result.lines_read;
        if (line.empty()) continue;
        if (!line.empty() && line.back() == '\r') line.pop_back();

        Document doc;
        try {
            nlohmann::ordered_json record =
                nlohmann::ordered_json::parse(line, nullptr, true);
            doc = document_from_json(record, result.lines_read);
        } catch (const nlohmann::json::parse_error& e) {
            if (opts.skip_malformed) {
                ++result.malformed_skipped;
                continue;
            }
            throw input_error(std::string("malformed JSON: ") + e.what(), result.lines_read);
        } catch (const input_error&) {
            if (opts.skip_malformed) {
                ++result.malformed_skipped;
                continue;
            }
            throw;
        }

        if (!seen_ids.insert(doc.id).second)
            throw input_error("duplicate id '" + doc.id + "'", result.lines_read);
        result.docs.push_back(std::move(doc));
    }
    if (in.bad()) throw io_error("read failure on input stream");
    return result;
}

IngestResult ingest_file(const std::string& path, const IngestOptions& opts) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open input file: " + path);
    return ingest(in, opts);
}

CurationReport emit(std::span<const DocOutcome> outcomes, const PipelineConfig& config,
                    std::uint64_t near_cluster_count, EmitSinks sinks) {
    if (!sinks.kept) throw state_error("emit: no output sink");

    CurationReport report;
    report.config_echo = config;
    report.cluster_count = near_cluster_count;
    for (Stage s : config.stages) report.removed_by_stage[s];

    std::vector<const DocOutcome*> order;
    order.reserve(outcomes.size());
    for (const DocOutcome& outcome : outcomes) order.push_back(&outcome);
    std::sort(order.begin(), order.end(),
              [](const DocOutcome* a, const DocOutcome* b) { return a->doc.id < b->doc.id; });

    for (const DocOutcome* outcome : order) {
        report.docs_in += 1;
        report.bytes_in += outcome->original_bytes;
        if (outcome->drop) {
            auto& removal = report.removed_by_stage[outcome->drop->stage];
            removal.docs_removed += 1;
            removal.bytes_removed += outcome->original_bytes;

            if (sinks.drops) {
                nlohmann::ordered_json j;
                j["id"] = outcome->doc.id;
                j["kept"] = false;
                j["stage"] = stage_name(outcome->drop->stage);
                j["reason"] = outcome->drop->reason;
                if (!outcome->drop->cluster.empty()) j["cluster"] = outcome->drop->cluster;
                *sinks.drops << j.dump() << '\n';
            }
            continue;
        }

        report.docs_out += 1;
        report.bytes_out += outcome->doc.byte_len;
        if (outcome->doc.byte_len < outcome->original_bytes) {
            report.removed_by_stage[Stage::paragraph].bytes_removed +=
                outcome->original_bytes - outcome->doc.byte_len;
        }

        nlohmann::ordered_json j = document_to_json(outcome->doc);
        j["curation"] = {{"kept", true}};
        *sinks.kept << j.dump() << '\n';
        if (!*sinks.kept) throw io_error("write failure on output sink (partial output)");
    }

    if (report.docs_in > 0) {
        report.pruned_doc_fraction =
            1.0 - static_cast<double>(report.docs_out) / static_cast<double>(report.docs_in);
    }
    if (report.bytes_in > 0) {
        report.pruned_byte_fraction =
            1.0 - static_cast<double>(report.bytes_out) / static_cast<double>(report.bytes_in);
    }

    check_report(report);
    return report;
}

} // namespace curate
