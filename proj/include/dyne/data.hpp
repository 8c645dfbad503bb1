#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "dyne/vocab.hpp"

namespace dyne {

struct Cluster {
    std::string id;
    std::vector<std::string> documents;
    std::vector<std::string> references;

    friend bool operator==(const Cluster&, const Cluster&) = default;
};

struct ClusterSet {
    std::vector<Cluster> clusters;

    /// Throws validation error on an empty document list or repeated id.
    void validate() const;
    const Cluster* find(std::string_view id) const;

    friend bool operator==(const ClusterSet&, const ClusterSet&) = default;
};

/// One JSON object per line: {"id": str, "documents": [str, ...],
/// "references": [str, ...]}. `references` may be empty or absent; other
/// keys are ignored; blank lines are skipped.
ClusterSet parse_clusters(std::string_view text);
ClusterSet load_clusters(const std::filesystem::path& path);
std::string serialize_clusters(const ClusterSet& set);
void save_clusters(const ClusterSet& set, const std::filesystem::path& path);

/// Seed of the per-cluster generator: splitmix64(splitmix64(seed) ^
/// fnv1a64(cluster_id)). Selections do not depend on other clusters.
std::uint64_t cluster_seed(std::uint64_t seed, std::string_view cluster_id);

/// Indices of the documents fed to the ensemble, ascending. All of them when
/// the cluster has at most max_docs documents; otherwise a uniform subset
/// drawn with a partial Fisher-Yates shuffle over std::mt19937_64 seeded by
/// cluster_seed(). Bounded draws use Lemire's multiply-shift rejection, so
/// results are identical on every platform.
std::vector<std::size_t> select_document_indices(const Cluster& cluster, std::size_t max_docs, std::uint64_t seed);
std::vector<std::string> select_documents(const Cluster& cluster, std::size_t max_docs, std::uint64_t seed);

/// Whitespace tokenization; unknown strings and the BOS string map to UNK;
/// keeps the first max_tokens tokens.
TokenSeq tokenize_and_truncate(std::string_view text, const Vocab& vocab, std::size_t max_tokens);

}  // namespace dyne
