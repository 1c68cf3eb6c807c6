#include "curate/dedup.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "curate/errors.hpp"
#include "curate/hash.hpp"
#include "curate/union_find.hpp"

namespace curate {

namespace {

DupCluster make_cluster(std::vector<std::string> members, ClusterKind kind) {
    std::sort(members.begin(), members.end());
    DupCluster cluster;
    cluster.survivor_id = members.front();
    cluster.member_ids = std::move(members);
    cluster.kind = kind;
    return cluster;
}

void sort_by_survivor(std::vector<DupCluster>& clusters) {
    std::sort(clusters.begin(), clusters.end(),
              [](const DupCluster& a, const DupCluster& b) {
                  return a.survivor_id < b.survivor_id;
              });
}

} // namespace

std::vector<DupCluster> exact_dedup(std::span<const Document> docs, DedupScope scope) {
    struct GroupKey {
        Hash128 hash;
        std::string_view source;
        bool operator==(const GroupKey&) const = default;
    };
    struct GroupKeyHasher {
        std::size_t operator()(const GroupKey& k) const {
            std::size_t h = Hash128Hasher{}(k.hash);
            if (!k.source.empty()) h ^= std::hash<std::string_view>{}(k.source);
            return h;
        }
    };

    std::unordered_map<GroupKey, std::vector<std::string>, GroupKeyHasher> groups;
    groups.reserve(docs.size());
    for (const Document& doc : docs) {
        GroupKey key{content_hash(doc.text),
                     scope == DedupScope::within_source ? std::string_view{doc.source}
                                                        : std::string_view{}};
        groups[key].push_back(doc.id);
    }

    std::vector<DupCluster> clusters;
    for (auto& [key, members] : groups) {
        if (members.size() < 2) continue;
        clusters.push_back(make_cluster(std::move(members), ClusterKind::exact));
    }
    sort_by_survivor(clusters);
    return clusters;
}

bool verify_pair(const ShingleSet& a, const ShingleSet& b, double tau) {
    return exact_jaccard(a, b) >= tau;
}

bool verify_pair(const MinHashSignature& a, const MinHashSignature& b, double tau) {
    return estimate_jaccard(a, b) >= tau;
}

std::vector<DupCluster> cluster_pairs(
    const std::vector<std::pair<std::string, std::string>>& pairs) {
    // Map ids to dense indices; sorted so the result is input-order independent.
    std::vector<std::string> ids;
    ids.reserve(pairs.size() * 2);
    for (const auto& [a, b] : pairs) {
        ids.push_back(a);
        ids.push_back(b);
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

    auto index_of = [&](const std::string& id) {
        return static_cast<std::size_t>(
            std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
    };

    UnionFind uf(ids.size());
    for (const auto& [a, b] : pairs) uf.unite(index_of(a), index_of(b));

    std::unordered_map<std::size_t, std::vector<std::string>> components;
    for (std::size_t i = 0; i < ids.size(); ++i) components[uf.find(i)].push_back(ids[i]);

    std::vector<DupCluster> clusters;
    for (auto& [root, members] : components) {
        if (members.size() < 2) continue; // self-pairs only; cannot happen with real pairs
        clusters.push_back(make_cluster(std::move(members), ClusterKind::near));
    }
    sort_by_survivor(clusters);
    return clusters;
}

std::uint64_t count_paragraphs(std::string_view text) {
    std::uint64_t count = 0;
    std::size_t pos = 0;
    bool in_paragraph = false;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view line =
            text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
        bool blank = line.find_first_not_of(" \t\r\f\v") == std::string_view::npos;
        if (!blank && !in_paragraph) {
            ++count;
            in_paragraph = true;
        } else if (blank) {
            in_paragraph = false;
        }
        if (eol == std::string_view::npos) break;
        pos = eol + 1;
    }
    return count;
}

namespace {

struct ParagraphSpan {
    std::size_t begin; // byte offsets into the document text
    std::size_t end;
};

// Maximal runs of non-blank lines. A line is blank when it holds nothing but
// ASCII whitespace (Unicode spaces inside a line do not split paragraphs).
std::vector<ParagraphSpan> split_paragraphs(std::string_view text) {
    std::vector<ParagraphSpan> spans;
    std::size_t pos = 0;
    std::size_t para_begin = 0;
    bool in_paragraph = false;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::size_t line_end = eol == std::string_view::npos ? text.size() : eol;
        std::string_view line = text.substr(pos, line_end - pos);
        bool blank = line.find_first_not_of(" \t\r\f\v") == std::string_view::npos;
        if (!blank && !in_paragraph) {
            para_begin = pos;
            in_paragraph = true;
        } else if (blank && in_paragraph) {
            spans.push_back({para_begin, pos == 0 ? 0 : pos - 1});
            in_paragraph = false;
        }
        if (eol == std::string_view::npos) break;
        pos = eol + 1;
    }
    if (in_paragraph) spans.push_back({para_begin, text.size()});
    return spans;
}

std::string normalize_paragraph(std::string_view paragraph) {
    std::string norm;
    for (const std::string& word : tokenize_lower(paragraph)) {
        if (!norm.empty()) norm.push_back(' ');
        norm.append(word);
    }
    return norm;
}

} // namespace

std::vector<ParagraphRewrite> paragraph_dedup(std::span<const Document> docs,
                                              BloomFilter& bloom) {
    std::vector<ParagraphRewrite> rewrites(docs.size());
    for (std::size_t d = 0; d < docs.size(); ++d) {
        std::string_view text = docs[d].text;
        auto spans = split_paragraphs(text);
        if (spans.empty()) continue; // nothing to test; doc passes through

        std::vector<ParagraphSpan> kept;
        kept.reserve(spans.size());
        for (const ParagraphSpan& span : spans) {
            std::string_view paragraph = text.substr(span.begin, span.end - span.begin);
            std::string norm = normalize_paragraph(paragraph);
            if (norm.empty()) {
                kept.push_back(span); // no token content; never a duplicate
                continue;
            }
            if (bloom.test_and_insert(norm)) {
                ++rewrites[d].paragraphs_removed;
            } else {
                kept.push_back(span);
            }
        }

        if (rewrites[d].paragraphs_removed == 0) continue; // keep original bytes
        if (kept.empty()) {
            rewrites[d].dropped = true;
            continue;
        }
        rewrites[d].rewritten = true;
        std::string& out = rewrites[d].text;
        for (const ParagraphSpan& span : kept) {
            if (!out.empty()) out.append("\n\n");
            out.append(text.substr(span.begin, span.end - span.begin));
        }
    }
    return rewrites;
}

std::vector<DropDecision> apply_dedup(std::span<const Document> docs,
                                      std::span<const DupCluster> clusters) {
    std::unordered_map<std::string_view, const DupCluster*> exact_owner;
    std::unordered_map<std::string_view, const DupCluster*> near_owner;

    std::vector<DropDecision> drops;
    for (const DupCluster& cluster : clusters) {
        auto& owner = cluster.kind == ClusterKind::exact ? exact_owner : near_owner;
        for (const std::string& member : cluster.member_ids) {
            if (!owner.emplace(member, &cluster).second)
                throw state_error("document '" + member + "' is in two " +
                                  (cluster.kind == ClusterKind::exact ? "exact" : "near") +
                                  std::string(" clusters"));
            if (member != cluster.survivor_id)
                drops.push_back({member, cluster.survivor_id, cluster.kind});
        }
    }

    // Order drops by the documents' order so attribution is deterministic.
    std::unordered_map<std::string_view, std::size_t> doc_pos;
    doc_pos.reserve(docs.size());
    for (std::size_t i = 0; i < docs.size(); ++i) doc_pos.emplace(docs[i].id, i);
    std::sort(drops.begin(), drops.end(), [&](const DropDecision& a, const DropDecision& b) {
        auto ia = doc_pos.find(a.doc_id), ib = doc_pos.find(b.doc_id);
        std::size_t pa = ia == doc_pos.end() ? doc_pos.size() : ia->second;
        std::size_t pb = ib == doc_pos.end() ? doc_pos.size() : ib->second;
        if (pa != pb) return pa < pb;
        return a.doc_id < b.doc_id;
    });
    return drops;
}

} // namespace curate
