#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "curate/config_file.hpp"
#include "curate/document.hpp"
#include "curate/errors.hpp"
#include "curate/jsonl.hpp"

using namespace curate;

TEST_CASE("ingest maps fields and computes byte_len") {
    std::istringstream in(R"({"id":"a","source":"s1","text":"hello"})" "\n");
    auto result = ingest(in);
    REQUIRE(result.docs.size() == 1);
    const Document& doc = result.docs[0];
    CHECK(doc.id == "a");
    CHECK(doc.source == "s1");
    CHECK(doc.text == "hello");
    CHECK(doc.byte_len == 5);
    CHECK_FALSE(doc.score.has_value());
    CHECK(doc.meta.empty());
}

TEST_CASE("ingest of empty stream yields nothing") {
    std::istringstream in("");
    auto result = ingest(in);
    CHECK(result.docs.empty());
    CHECK(result.lines_read == 0);
}

TEST_CASE("ingest aborts on duplicate ids naming the id") {
    std::istringstream in(R"({"id":"a","source":"s","text":"x"})" "\n"
                          R"({"id":"a","source":"s","text":"y"})" "\n");
    CHECK_THROWS_WITH_AS(ingest(in), doctest::Contains("'a'"), input_error);
}

TEST_CASE("ingest reports malformed lines with line numbers") {
    std::istringstream in(R"({"id":"a","source":"s","text":"x"})" "\n"
                          "not json\n");
    try {
        ingest(in);
        FAIL("expected input_error");
    } catch (const input_error& e) {
        CHECK(e.line() == 2);
    }
}

TEST_CASE("ingest skip mode counts malformed lines") {
    std::istringstream in("oops\n"
                          R"({"id":"a","source":"s","text":"x"})" "\n"
                          R"({"id":"b","source":"s"})" "\n" // missing text
                          R"({"id":"c","source":"s","text":"y"})" "\n");
    auto result = ingest(in, {.skip_malformed = true});
    CHECK(result.docs.size() == 2);
    CHECK(result.malformed_skipped == 2);
}

TEST_CASE("ingest rejects invalid utf8 and bad field types") {
    std::istringstream bad_utf8("{\"id\":\"a\",\"source\":\"s\",\"text\":\"\\ud800\"}\n");
    CHECK_THROWS_AS(ingest(bad_utf8), input_error);

    std::istringstream bad_type(R"({"id":17,"source":"s","text":"x"})" "\n");
    CHECK_THROWS_AS(ingest(bad_type), input_error);

    std::istringstream bad_score(R"({"id":"a","source":"s","text":"x","score":"high"})" "\n");
    CHECK_THROWS_AS(ingest(bad_score), input_error);
}

TEST_CASE("ingest preserves unknown fields and reads scores") {
    std::istringstream in(
        R"({"id":"a","source":"s","text":"x","score":2.5,"url":"http://e.x","lang":"en"})" "\n");
    auto result = ingest(in);
    REQUIRE(result.docs.size() == 1);
    const Document& doc = result.docs[0];
    CHECK(doc.score == 2.5);
    CHECK(doc.meta["url"] == "http://e.x");
    CHECK(doc.meta["lang"] == "en");
    CHECK(doc.meta.size() == 2);
}

TEST_CASE("ingest recomputes pipeline-owned fields") {
    std::istringstream in(
        R"({"id":"a","source":"s","text":"hello","byte_len":999,"curation":{"kept":true}})" "\n");
    auto result = ingest(in);
    REQUIRE(result.docs.size() == 1);
    CHECK(result.docs[0].byte_len == 5);
    CHECK(result.docs[0].meta.empty()); // neither field leaks into meta
}

namespace {

DocOutcome kept_outcome(std::string id, std::string text) {
    Document d;
    d.id = std::move(id);
    d.source = "s";
    d.text = std::move(text);
    d.byte_len = d.text.size();
    std::uint64_t original = d.byte_len;
    return {std::move(d), original, std::nullopt};
}

DocOutcome dropped_outcome(std::string id, std::string text, Stage stage,
                           std::string cluster = {}) {
    DocOutcome o = kept_outcome(std::move(id), std::move(text));
    o.drop = DropInfo{stage, "test drop", std::move(cluster)};
    return o;
}

} // namespace

TEST_CASE("emit with nothing dropped") {
    std::vector<DocOutcome> outcomes;
    for (int i = 0; i < 10; ++i)
        outcomes.push_back(kept_outcome("doc" + std::to_string(i), "text"));
    std::ostringstream out;
    auto report = emit(outcomes, PipelineConfig{}, 0, {.kept = &out});
    CHECK(report.docs_in == 10);
    CHECK(report.docs_out == 10);
    CHECK(report.pruned_doc_fraction == 0.0);
    CHECK(report.pruned_byte_fraction == 0.0);
}

TEST_CASE("emit attributes planted drops to their stage") {
    std::vector<DocOutcome> outcomes;
    for (int i = 0; i < 60; ++i) outcomes.push_back(kept_outcome("keep" + std::to_string(i), "t"));
    for (int i = 0; i < 40; ++i)
        outcomes.push_back(dropped_outcome("near" + std::to_string(i), "t", Stage::near, "keep0"));
    std::ostringstream out;
    auto report = emit(outcomes, PipelineConfig{}, 12, {.kept = &out});
    CHECK(report.docs_in == 100);
    CHECK(report.docs_out == 60);
    CHECK(report.removed_by_stage.at(Stage::near).docs_removed == 40);
    CHECK(report.cluster_count == 12);
}

TEST_CASE("emit byte fraction is exact") {
    // One 100-byte doc dropped out of a 1000-byte corpus.
    std::vector<DocOutcome> outcomes;
    for (int i = 0; i < 9; ++i)
        outcomes.push_back(kept_outcome("k" + std::to_string(i), std::string(100, 'x')));
    outcomes.push_back(dropped_outcome("z", std::string(100, 'x'), Stage::length));
    std::ostringstream out;
    auto report = emit(outcomes, PipelineConfig{}, 0, {.kept = &out});
    CHECK(report.bytes_in == 1000);
    CHECK(report.bytes_out == 900);
    CHECK(report.pruned_byte_fraction == doctest::Approx(0.1));
    CHECK(report.removed_by_stage.at(Stage::length).bytes_removed == 100);
}

TEST_CASE("emit accounts rewritten documents as paragraph bytes") {
    DocOutcome rewritten = kept_outcome("a", "short");
    rewritten.original_bytes = 25; // paragraph stage trimmed 20 bytes
    std::ostringstream out;
    auto report = emit(std::vector<DocOutcome>{rewritten}, PipelineConfig{}, 0, {.kept = &out});
    CHECK(report.docs_out == 1);
    CHECK(report.bytes_in == 25);
    CHECK(report.bytes_out == 5);
    CHECK(report.removed_by_stage.at(Stage::paragraph).bytes_removed == 20);
    CHECK(report.removed_by_stage.at(Stage::paragraph).docs_removed == 0);
}

TEST_CASE("emit writes kept docs sorted by id with annotation") {
    std::vector<DocOutcome> outcomes = {kept_outcome("b", "2"), kept_outcome("a", "1"),
                                        dropped_outcome("c", "3", Stage::exact, "a")};
    std::ostringstream out, drops;
    emit(outcomes, PipelineConfig{}, 0, {.kept = &out, .drops = &drops});

    std::string expected_first = R"({"id":"a","source":"s","text":"1","byte_len":1,"curation":{"kept":true}})";
    auto lines = out.str();
    CHECK(lines.find(expected_first) == 0);
    CHECK(lines.find("\"id\":\"a\"") < lines.find("\"id\":\"b\""));

    auto drop_line = drops.str();
    CHECK(drop_line.find("\"kept\":false") != std::string::npos);
    CHECK(drop_line.find("\"stage\":\"exact\"") != std::string::npos);
    CHECK(drop_line.find("\"cluster\":\"a\"") != std::string::npos);
}

TEST_CASE("emit round-trips meta byte-identically") {
    std::istringstream in(
        R"({"id":"a","source":"s","text":"x","tag":"v","nested":{"k":[1,2,3]},"zeta":true})" "\n");
    auto docs = ingest(in).docs;
    REQUIRE(docs.size() == 1);
    std::ostringstream out;
    std::vector<DocOutcome> outcomes = {{docs[0], docs[0].byte_len, std::nullopt}};
    emit(outcomes, PipelineConfig{}, 0, {.kept = &out});
    CHECK(out.str().find(R"("tag":"v","nested":{"k":[1,2,3]},"zeta":true)") != std::string::npos);
}

TEST_CASE("report conservation is enforced") {
    CurationReport bad;
    bad.docs_in = 5;
    bad.docs_out = 3; // one unaccounted doc
    bad.removed_by_stage[Stage::length] = {1, 0};
    CHECK_THROWS_AS(check_report(bad), state_error);

    bad.removed_by_stage[Stage::length] = {2, 0};
    CHECK_NOTHROW(check_report(bad));
}

TEST_CASE("emit conservation holds for random decision mixes") {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<DocOutcome> outcomes;
        int n = 1 + rng() % 50;
        for (int i = 0; i < n; ++i) {
            std::string id = "d" + std::to_string(i);
            std::string text(1 + rng() % 64, 'x');
            if (rng() % 3 == 0) {
                outcomes.push_back(dropped_outcome(id, text,
                                                    kStageOrder[rng() % 5]));
            } else {
                outcomes.push_back(kept_outcome(id, text));
            }
        }
        std::ostringstream out;
        auto report = emit(outcomes, PipelineConfig{}, 0, {.kept = &out});
        CHECK_NOTHROW(check_report(report)); // emit already checks; belt and braces
        CHECK(report.docs_in == static_cast<std::uint64_t>(n));
    }
}

TEST_CASE("validate_config accepts the defaults") {
    CHECK(validate_config(PipelineConfig{}).empty());

    PipelineConfig text_defaults;
    text_defaults.jaccard_threshold = 0.8;
    text_defaults.num_perms = 128;
    CHECK(validate_config(text_defaults).empty());
}

TEST_CASE("validate_config flags out-of-range values by key") {
    PipelineConfig cfg;
    cfg.jaccard_threshold = 1.5;
    auto errors = validate_config(cfg);
    REQUIRE(errors.size() == 1);
    CHECK(errors[0].find("jaccard_threshold") != std::string::npos);

    cfg = PipelineConfig{};
    cfg.quality_percentile = 0.0;
    CHECK(validate_config(cfg).size() == 1);

    cfg = PipelineConfig{};
    cfg.bloom_target_fp = 1.0;
    CHECK(validate_config(cfg).size() == 1);

    cfg = PipelineConfig{};
    cfg.ngram_size = 0;
    CHECK(validate_config(cfg).size() == 1);

    cfg = PipelineConfig{};
    cfg.bands = 16; // rows missing
    CHECK(validate_config(cfg).size() == 1);

    cfg = PipelineConfig{};
    cfg.bands = 20;
    cfg.rows = 20; // 400 > 128
    auto banding_errors = validate_config(cfg);
    REQUIRE(banding_errors.size() == 1);
    CHECK(banding_errors[0].find("bands*rows") != std::string::npos);

    cfg = PipelineConfig{};
    cfg.stages.clear();
    CHECK(validate_config(cfg).size() == 1);
}

TEST_CASE("config file parsing and precedence") {
    std::istringstream file_text(
        "# comment\n"
        "length_threshold = 100\n"
        "jaccard_threshold = 0.7\n"
        "stages = length, exact\n"
        "\n"
        "seed = 7 # trailing comment\n");
    auto file_keys = parse_config_text(file_text);
    CHECK(file_keys.at("length_threshold") == "100");
    CHECK(file_keys.at("seed") == "7");

    std::map<std::string, std::string> cli_keys = {{"jaccard_threshold", "0.9"}};
    auto cfg = build_config(file_keys, cli_keys);
    CHECK(cfg.length_threshold == 100);        // file
    CHECK(cfg.jaccard_threshold == 0.9);       // CLI beats file
    CHECK(cfg.seed == 7);
    CHECK(cfg.stages == std::vector<Stage>{Stage::length, Stage::exact});
    CHECK(cfg.ngram_size == 13); // default
}

TEST_CASE("profile rebases defaults but explicit keys win") {
    auto code = build_config({{"profile", "code"}}, {});
    CHECK(code.num_perms == 256);
    CHECK(code.jaccard_threshold == 0.85);

    auto overridden = build_config({{"profile", "code"}, {"num_perms", "64"}}, {});
    CHECK(overridden.num_perms == 64);
    CHECK(overridden.jaccard_threshold == 0.85);

    auto text = build_config({}, {});
    CHECK(text.num_perms == 128);
    CHECK(text.jaccard_threshold == 0.8);
}

TEST_CASE("unknown config keys and bad values are rejected") {
    CHECK_THROWS_WITH_AS(build_config({{"typo_key", "1"}}, {}),
                         doctest::Contains("typo_key"), config_error);
    CHECK_THROWS_AS(build_config({{"seed", "not-a-number"}}, {}), config_error);
    CHECK_THROWS_AS(build_config({{"stages", "length,bogus"}}, {}), config_error);
    CHECK_THROWS_AS(build_config({{"jaccard_threshold", "1.5"}}, {}), config_error);
}

TEST_CASE("stage list normalizes to canonical order") {
    auto cfg = build_config({{"stages", "quality,near,length"}}, {});
    CHECK(cfg.stages == std::vector<Stage>{Stage::length, Stage::near, Stage::quality});
}

TEST_CASE("report json carries the config echo and stage table") {
    CurationReport report;
    report.docs_in = 3;
    report.docs_out = 2;
    report.bytes_in = 30;
    report.bytes_out = 20;
    report.removed_by_stage[Stage::exact] = {1, 10};
    report.pruned_byte_fraction = 1.0 / 3.0;
    report.config_echo.seed = 99;
    report.bands_used = 16;
    report.rows_used = 8;
    auto j = report_to_json(report);
    CHECK(j["docs_in"] == 3);
    CHECK(j["removed_by_stage"]["exact"]["docs_removed"] == 1);
    CHECK(j["config_echo"]["seed"] == 99);
    CHECK(j["bands_used"] == 16);
    CHECK(j["rows_used"] == 8);
}
