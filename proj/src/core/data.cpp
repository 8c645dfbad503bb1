#include "dyne/data.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "dyne/error.hpp"
#include "dyne/text_util.hpp"

namespace dyne {

namespace {

using nlohmann::json;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

// Uniform integer in [0, range), range > 0.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t range) {
    unsigned __int128 m = static_cast<unsigned __int128>(rng()) * range;
    auto low = static_cast<std::uint64_t>(m);
    if (low < range) {
        const std::uint64_t threshold = (0 - range) % range;
        while (low < threshold) {
            m = static_cast<unsigned __int128>(rng()) * range;
            low = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::uint64_t>(m >> 64);
}

[[noreturn]] void line_error(std::size_t line, const std::string& what) {
    fail(ErrorKind::format, "cluster file line " + std::to_string(line) + ": " + what);
}

std::vector<std::string> string_list(const json& obj, const char* key, std::size_t line) {
    const auto& value = obj.at(key);
    if (!value.is_array()) line_error(line, std::string("'") + key + "' must be a list of strings");
    std::vector<std::string> out;
    out.reserve(value.size());
    for (const auto& v : value) {
        if (!v.is_string()) line_error(line, std::string("'") + key + "' must be a list of strings");
        out.push_back(v.get<std::string>());
    }
    return out;
}

}  // namespace

void ClusterSet::validate() const {
    std::unordered_set<std::string_view> seen;
    for (const auto& c : clusters) {
        if (c.documents.empty()) fail(ErrorKind::validation, "cluster '" + c.id + "' has no documents");
        if (!seen.insert(c.id).second) fail(ErrorKind::validation, "duplicate cluster id '" + c.id + "'");
    }
}

const Cluster* ClusterSet::find(std::string_view id) const {
    for (const auto& c : clusters) {
        if (c.id == id) return &c;
    }
    return nullptr;
}

ClusterSet parse_clusters(std::string_view text) {
    ClusterSet set;
    std::unordered_set<std::string> seen;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (split_whitespace(line).empty()) continue;
        json obj;
        try {
            obj = json::parse(line);
        } catch (const json::parse_error& e) {
            line_error(line_no, std::string("invalid JSON: ") + e.what());
        }
        if (!obj.is_object()) line_error(line_no, "expected a JSON object");
        if (!obj.contains("id") || !obj["id"].is_string()) line_error(line_no, "missing string field 'id'");
        if (!obj.contains("documents")) line_error(line_no, "missing field 'documents'");
        Cluster c;
        c.id = obj["id"].get<std::string>();
        c.documents = string_list(obj, "documents", line_no);
        if (obj.contains("references")) c.references = string_list(obj, "references", line_no);
        if (c.documents.empty()) {
            fail(ErrorKind::validation, "cluster file line " + std::to_string(line_no) + ": cluster '" + c.id +
                                            "' has no documents");
        }
        if (!seen.insert(c.id).second) {
            fail(ErrorKind::validation, "cluster file line " + std::to_string(line_no) + ": duplicate cluster id '" +
                                            c.id + "'");
        }
        set.clusters.push_back(std::move(c));
    }
    return set;
}

ClusterSet load_clusters(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::io, "cannot open cluster file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_clusters(buf.str());
}

std::string serialize_clusters(const ClusterSet& set) {
    std::string out;
    for (const auto& c : set.clusters) {
        json obj = {{"id", c.id}, {"documents", c.documents}, {"references", c.references}};
        out += obj.dump();
        out += '\n';
    }
    return out;
}

void save_clusters(const ClusterSet& set, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorKind::io, "cannot write " + path.string());
    out << serialize_clusters(set);
    if (!out) fail(ErrorKind::io, "failed writing " + path.string());
}

std::uint64_t cluster_seed(std::uint64_t seed, std::string_view cluster_id) {
    return splitmix64(splitmix64(seed) ^ fnv1a64(cluster_id));
}

std::vector<std::size_t> select_document_indices(const Cluster& cluster, std::size_t max_docs, std::uint64_t seed) {
    if (max_docs < 1) fail(ErrorKind::usage, "max_docs must be at least 1");
    const std::size_t n = cluster.documents.size();
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    if (n <= max_docs) return idx;
    std::mt19937_64 rng(cluster_seed(seed, cluster.id));
    for (std::size_t i = 0; i < max_docs; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(bounded(rng, n - i));
        std::swap(idx[i], idx[j]);
    }
    idx.resize(max_docs);
    std::sort(idx.begin(), idx.end());
    return idx;
}

std::vector<std::string> select_documents(const Cluster& cluster, std::size_t max_docs, std::uint64_t seed) {
    std::vector<std::string> out;
    for (auto i : select_document_indices(cluster, max_docs, seed)) out.push_back(cluster.documents[i]);
    return out;
}

TokenSeq tokenize_and_truncate(std::string_view text, const Vocab& vocab, std::size_t max_tokens) {
    if (max_tokens < 1) fail(ErrorKind::usage, "max_tokens must be at least 1");
    TokenSeq out;
    for (auto piece : split_whitespace(text)) {
        if (out.size() >= max_tokens) break;
        const TokenId id = vocab.id_or_unk(piece);
        out.push_back(id == kBos ? kUnk : id);
    }
    return out;
}

}  // namespace dyne
