// End-to-end checks against the installed binary: exit codes, subcommand
// composition, and artifact formats. The binary path arrives via CURATE_BIN.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

std::string curate_bin() {
    const char* bin = std::getenv("CURATE_BIN");
    REQUIRE_MESSAGE(bin != nullptr, "CURATE_BIN must point at the curate binary");
    return bin;
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("curate-cli-" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

int run_cli(const std::string& args) {
    std::string cmd = curate_bin() + " " + args + " >/dev/null 2>&1";
    int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    return WEXITSTATUS(status);
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string sample_corpus() {
    std::string base = "alpha bravo charlie delta echo foxtrot golf hotel india juliett "
                       "kilo lima mike november oscar papa quebec romeo sierra tango";
    std::ostringstream out;
    out << R"({"id":"a","source":"s1","text":")" << base << R"("})" << "\n";
    out << R"({"id":"b","source":"s1","text":")" << base << R"( uniform victor"})" << "\n";
    out << R"({"id":"c","source":"s2","text":"totally different words in this one yes"})"
        << "\n";
    out << R"({"id":"d","source":"s2","text":")" << base << R"("})" << "\n";
    return out.str();
}

} // namespace

TEST_CASE("run succeeds on a clean corpus") {
    TempDir tmp;
    write_file(tmp.file("in.jsonl"), sample_corpus());
    int code = run_cli("run " + tmp.file("in.jsonl") + " -o " + tmp.file("out.jsonl") +
                       " --length-threshold 0 --ngram 5 --report " + tmp.file("rep.json"));
    CHECK(code == 0);
    CHECK(slurp(tmp.file("out.jsonl")).find("\"curation\"") != std::string::npos);
    CHECK(slurp(tmp.file("rep.json")).find("\"docs_in\": 4") != std::string::npos);
}

TEST_CASE("invalid configuration exits 2") {
    TempDir tmp;
    write_file(tmp.file("in.jsonl"), sample_corpus());
    CHECK(run_cli("run " + tmp.file("in.jsonl") + " -o " + tmp.file("out.jsonl") +
                  " --threshold 1.5") == 2);

    write_file(tmp.file("bad.conf"), "no_such_key = 1\n");
    CHECK(run_cli("run --config " + tmp.file("bad.conf") + " " + tmp.file("in.jsonl") +
                  " -o " + tmp.file("out.jsonl")) == 2);

    CHECK(run_cli("run " + tmp.file("in.jsonl") + " -o " + tmp.file("out.jsonl") +
                  " --bands 99 --rows 99") == 2);
}

TEST_CASE("missing input exits 3") {
    TempDir tmp;
    CHECK(run_cli("run " + tmp.file("nope.jsonl") + " -o " + tmp.file("out.jsonl")) == 3);
    CHECK(run_cli("stats " + tmp.file("nope.jsonl")) == 3);
}

TEST_CASE("malformed records exit 4 in abort mode, skip with --on-malformed skip") {
    TempDir tmp;
    write_file(tmp.file("in.jsonl"),
               R"({"id":"a","source":"s","text":"fine"})" "\n"
               "this is not json\n");
    CHECK(run_cli("run " + tmp.file("in.jsonl") + " -o " + tmp.file("out.jsonl") +
                  " --length-threshold 0") == 4);
    CHECK(run_cli("run " + tmp.file("in.jsonl") + " -o " + tmp.file("out.jsonl") +
                  " --length-threshold 0 --on-malformed skip") == 0);
}

TEST_CASE("duplicate ids exit 4 even in skip mode") {
    TempDir tmp;
    write_file(tmp.file("in.jsonl"),
               R"({"id":"a","source":"s","text":"one"})" "\n"
               R"({"id":"a","source":"s","text":"two"})" "\n");
    CHECK(run_cli("run " + tmp.file("in.jsonl") + " -o " + tmp.file("out.jsonl") +
                  " --length-threshold 0") == 4);
    CHECK(run_cli("run " + tmp.file("in.jsonl") + " -o " + tmp.file("out.jsonl") +
                  " --length-threshold 0 --on-malformed skip") == 4);
}

TEST_CASE("validate checks configs without data") {
    TempDir tmp;
    write_file(tmp.file("good.conf"),
               "length_threshold = 200\n"
               "jaccard_threshold = 0.8\n"
               "num_perms = 128\n"
               "stages = length, exact, near\n");
    CHECK(run_cli("validate --config " + tmp.file("good.conf")) == 0);

    write_file(tmp.file("bad.conf"), "jaccard_threshold = 1.5\n");
    CHECK(run_cli("validate --config " + tmp.file("bad.conf")) == 2);
}

TEST_CASE("stats runs read-only") {
    TempDir tmp;
    write_file(tmp.file("in.jsonl"), sample_corpus());
    CHECK(run_cli("stats " + tmp.file("in.jsonl")) == 0);
}

TEST_CASE("sketch then index compose into a candidate dump") {
    TempDir tmp;
    write_file(tmp.file("in.jsonl"), sample_corpus());
    CHECK(run_cli("sketch " + tmp.file("in.jsonl") + " -o " + tmp.file("sigs.jsonl") +
                  " --ngram 5 --num-perm 64 --binary " + tmp.file("sigs.mhsg")) == 0);
    CHECK(slurp(tmp.file("sigs.jsonl")).find("\"mins\"") != std::string::npos);
    CHECK(slurp(tmp.file("sigs.mhsg")).substr(0, 4) == "MHSG");

    CHECK(run_cli("index " + tmp.file("in.jsonl") + " --sketches " + tmp.file("sigs.jsonl") +
                  " --ngram 5 --num-perm 64 -o " + tmp.file("pairs.tsv")) == 0);
    // a and d are byte-identical, so their signatures agree on every band.
    auto pairs = slurp(tmp.file("pairs.tsv"));
    CHECK(pairs.find("a\td") != std::string::npos);
    CHECK(pairs.find("c") == std::string::npos);
}

TEST_CASE("dedup subcommand writes cluster audit dumps") {
    TempDir tmp;
    write_file(tmp.file("in.jsonl"), sample_corpus());
    CHECK(run_cli("dedup " + tmp.file("in.jsonl") + " -o " + tmp.file("out.jsonl") +
                  " --mode both --ngram 5 --clusters " + tmp.file("clusters.tsv")) == 0);
    auto clusters = slurp(tmp.file("clusters.tsv"));
    CHECK(clusters.find("exact\ta\ta\td") != std::string::npos);
    CHECK(clusters.find("near\ta\ta\tb") != std::string::npos);

    auto out = slurp(tmp.file("out.jsonl"));
    CHECK(out.find("\"id\":\"a\"") != std::string::npos);
    CHECK(out.find("\"id\":\"c\"") != std::string::npos);
    CHECK(out.find("\"id\":\"b\"") == std::string::npos);
    CHECK(out.find("\"id\":\"d\"") == std::string::npos);
}

TEST_CASE("filter subcommand applies the length stage") {
    TempDir tmp;
    write_file(tmp.file("in.jsonl"),
               R"({"id":"long","source":"s","text":"this one certainly has enough characters to pass"})"
               "\n"
               R"({"id":"tiny","source":"s","text":"nope"})" "\n");
    CHECK(run_cli("filter " + tmp.file("in.jsonl") + " -o " + tmp.file("out.jsonl") +
                  " --length-threshold 20") == 0);
    auto out = slurp(tmp.file("out.jsonl"));
    CHECK(out.find("\"id\":\"long\"") != std::string::npos);
    CHECK(out.find("\"id\":\"tiny\"") == std::string::npos);
}

TEST_CASE("filter with only a quality cut skips the length stage") {
    TempDir tmp;
    write_file(tmp.file("in.jsonl"),
               R"({"id":"hi","source":"s","text":"short but good","score":9.0})" "\n"
               R"({"id":"lo","source":"s","text":"short and bad","score":1.0})" "\n");
    CHECK(run_cli("filter " + tmp.file("in.jsonl") + " -o " + tmp.file("out.jsonl") +
                  " --quality-top 0.5") == 0);
    auto out = slurp(tmp.file("out.jsonl"));
    CHECK(out.find("\"id\":\"hi\"") != std::string::npos); // short, but quality-only run
    CHECK(out.find("\"id\":\"lo\"") == std::string::npos);

    // Quality cut without scores is a data error.
    write_file(tmp.file("unscored.jsonl"), R"({"id":"a","source":"s","text":"x"})" "\n");
    CHECK(run_cli("filter " + tmp.file("unscored.jsonl") + " -o " + tmp.file("out2.jsonl") +
                  " --quality-top 0.5") == 4);
}
