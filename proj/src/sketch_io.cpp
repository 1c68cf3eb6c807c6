#include "curate/sketch_io.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>

#include <json.hpp>

#include "curate/errors.hpp"

namespace curate {

void write_sketches_jsonl(std::ostream& out, std::span<const MinHashSignature> sigs) {
    for (const MinHashSignature& sig : sigs) {
        nlohmann::ordered_json j;
        j["id"] = sig.doc_id;
        j["k"] = sig.k;
        j["seed"] = sig.seed;
        j["mins"] = sig.mins;
        out << j.dump() << '\n';
    }
    if (!out) throw io_error("write failure on sketch output");
}

std::vector<MinHashSignature> read_sketches_jsonl(std::istream& in) {
    std::vector<MinHashSignature> sigs;
    std::string line;
    std::uint64_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        nlohmann::ordered_json j;
        try {
            j = nlohmann::ordered_json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            throw input_error(std::string("malformed sketch record: ") + e.what(), line_no);
        }
        if (!j.contains("id") || !j.contains("k") || !j.contains("seed") || !j.contains("mins"))
            throw input_error("sketch record missing id/k/seed/mins", line_no);
        MinHashSignature sig;
        sig.doc_id = j["id"].get<std::string>();
        sig.k = j["k"].get<std::uint32_t>();
        sig.seed = j["seed"].get<std::uint64_t>();
        sig.mins = j["mins"].get<std::vector<std::uint64_t>>();
        if (!sig.mins.empty() && sig.mins.size() != sig.k)
            throw input_error("sketch record has " + std::to_string(sig.mins.size()) +
                                  " mins, expected k=" + std::to_string(sig.k),
                              line_no);
        sigs.push_back(std::move(sig));
    }
    if (in.bad()) throw io_error("read failure on sketch input");
    return sigs;
}

std::vector<MinHashSignature> read_sketches_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open sketch file: " + path);
    return read_sketches_jsonl(in);
}

namespace {

constexpr char kMagic[4] = {'M', 'H', 'S', 'G'};
constexpr unsigned char kVersion = 1;

void put_u32(std::ostream& out, std::uint32_t v) {
    char buf[4];
    for (int i = 0; i < 4; ++i) buf[i] = static_cast<char>(v >> (i * 8));
    out.write(buf, 4);
}

void put_u64(std::ostream& out, std::uint64_t v) {
    char buf[8];
    for (int i = 0; i < 8; ++i) buf[i] = static_cast<char>(v >> (i * 8));
    out.write(buf, 8);
}

bool get_u64(std::istream& in, std::uint64_t& v) {
    unsigned char buf[8];
    if (!in.read(reinterpret_cast<char*>(buf), 8)) return false;
    v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(buf[i]) << (i * 8);
    return true;
}

} // namespace

void write_sketches_binary(std::ostream& out, std::span<const MinHashSignature> sigs) {
    std::uint32_t k = sigs.empty() ? 0 : sigs.front().k;
    out.write(kMagic, 4);
    out.put(static_cast<char>(kVersion));
    put_u32(out, k);
    for (const MinHashSignature& sig : sigs) {
        if (sig.k != k) throw config_error("binary sketch file cannot mix k");
        if (sig.empty()) {
            for (std::uint32_t i = 0; i < k; ++i)
                put_u64(out, std::numeric_limits<std::uint64_t>::max());
        } else {
            for (std::uint64_t v : sig.mins) put_u64(out, v);
        }
    }
    if (!out) throw io_error("write failure on binary sketch output");
}

std::vector<MinHashSignature> read_sketches_binary(std::istream& in, std::uint64_t seed) {
    char magic[4];
    if (!in.read(magic, 4) || !std::equal(magic, magic + 4, kMagic))
        throw input_error("not a binary sketch file (bad magic)");
    int version = in.get();
    if (version != kVersion)
        throw input_error("unsupported binary sketch version " + std::to_string(version));
    unsigned char kbuf[4];
    if (!in.read(reinterpret_cast<char*>(kbuf), 4)) throw input_error("truncated sketch header");
    std::uint32_t k = 0;
    for (int i = 0; i < 4; ++i) k |= static_cast<std::uint32_t>(kbuf[i]) << (i * 8);

    std::vector<MinHashSignature> sigs;
    while (true) {
        MinHashSignature sig;
        sig.k = k;
        sig.seed = seed;
        sig.mins.resize(k);
        if (k == 0) break;
        std::uint64_t first = 0;
        if (!get_u64(in, first)) {
            if (in.gcount() == 0 && in.eof()) break;
            throw input_error("truncated sketch record");
        }
        sig.mins[0] = first;
        for (std::uint32_t i = 1; i < k; ++i) {
            if (!get_u64(in, sig.mins[i])) throw input_error("truncated sketch record");
        }
        bool all_max = std::all_of(sig.mins.begin(), sig.mins.end(), [](std::uint64_t v) {
            return v == std::numeric_limits<std::uint64_t>::max();
        });
        if (all_max) sig.mins.clear(); // empty sentinel
        sigs.push_back(std::move(sig));
    }
    return sigs;
}

} // namespace curate
