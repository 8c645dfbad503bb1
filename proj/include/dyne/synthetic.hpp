#pragma once

#include <cstddef>
#include <cstdint>

#include "dyne/data.hpp"
#include "dyne/decoder.hpp"
#include "dyne/seqmodel.hpp"

namespace dyne {

/// Knobs for a generated corpus where every document of a cluster repeats
/// one shared "signal" sentence (the reference) amid per-document noise.
/// Salient noise words are repeated inside a single document so that they
/// outscore the signal under any one input, but not under the ensemble.
struct ConsensusCorpusOptions {
    std::size_t clusters = 100;
    std::size_t min_docs = 5;
    std::size_t max_docs = 8;
    std::size_t signal_length = 6;
    std::size_t signal_vocab = 60;
    std::size_t noise_vocab = 240;
    std::size_t salient_per_doc = 3;
    std::size_t salient_repeats = 3;
    std::size_t filler_per_doc = 8;
    std::uint64_t seed = 1;
};

struct ConsensusCorpus {
    ClusterSet clusters;
    /// Copy-only model (lambda = 1, smooth_k = 1) over the corpus vocabulary.
    ToyModelSpec model;
    /// Forces exactly signal_length content tokens without repeats.
    DecodeParams params;
};

ConsensusCorpus make_consensus_corpus(const ConsensusCorpusOptions& options);

}  // namespace dyne
