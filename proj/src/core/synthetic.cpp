#include "dyne/synthetic.hpp"

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "dyne/error.hpp"

namespace dyne {

namespace {

// Uniform index in [0, n) from raw 64-bit draws; modulo bias is irrelevant
// at these sizes and keeps the output independent of the standard library.
std::size_t pick(std::mt19937_64& rng, std::size_t n) {
    return static_cast<std::size_t>(rng() % n);
}

template <class T>
void shuffle(std::vector<T>& v, std::mt19937_64& rng) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[pick(rng, i)]);
}

std::vector<std::string> sample_distinct(const std::vector<std::string>& pool, std::size_t count,
                                         std::mt19937_64& rng) {
    std::vector<std::size_t> idx(pool.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    for (std::size_t i = 0; i < count; ++i) std::swap(idx[i], idx[i + pick(rng, idx.size() - i)]);
    std::vector<std::string> out;
    for (std::size_t i = 0; i < count; ++i) out.push_back(pool[idx[i]]);
    return out;
}

std::string join(const std::vector<std::string>& words) {
    std::string out;
    for (const auto& w : words) {
        if (!out.empty()) out += ' ';
        out += w;
    }
    return out;
}

}  // namespace

ConsensusCorpus make_consensus_corpus(const ConsensusCorpusOptions& o) {
    if (o.clusters == 0 || o.min_docs == 0 || o.min_docs > o.max_docs || o.signal_length == 0 ||
        o.signal_length > o.signal_vocab || o.salient_per_doc + o.filler_per_doc > o.noise_vocab) {
        fail(ErrorKind::usage, "inconsistent consensus corpus options");
    }
    std::mt19937_64 rng(o.seed);

    std::vector<std::string> signal_words, noise_words;
    for (std::size_t i = 0; i < o.signal_vocab; ++i) signal_words.push_back("s" + std::to_string(i));
    for (std::size_t i = 0; i < o.noise_vocab; ++i) noise_words.push_back("n" + std::to_string(i));

    // Shuffled so that id-based tie-breaking favours neither word class.
    std::vector<std::string> content = signal_words;
    content.insert(content.end(), noise_words.begin(), noise_words.end());
    shuffle(content, rng);

    ConsensusCorpus corpus;
    corpus.model.lambda = 1.0;
    corpus.model.smooth_k = 1.0;
    corpus.model.vocab = Vocab::from_content(content);

    for (std::size_t c = 0; c < o.clusters; ++c) {
        Cluster cluster;
        cluster.id = "cluster-" + std::to_string(c);
        const auto signal = sample_distinct(signal_words, o.signal_length, rng);
        cluster.references.push_back(join(signal));

        const std::size_t docs = o.min_docs + pick(rng, o.max_docs - o.min_docs + 1);
        for (std::size_t d = 0; d < docs; ++d) {
            const auto noise = sample_distinct(noise_words, o.salient_per_doc + o.filler_per_doc, rng);
            std::vector<std::string> before, after;
            for (std::size_t i = 0; i < noise.size(); ++i) {
                const std::size_t copies = i < o.salient_per_doc ? o.salient_repeats : 1;
                for (std::size_t r = 0; r < copies; ++r) (pick(rng, 2) ? before : after).push_back(noise[i]);
            }
            shuffle(before, rng);
            shuffle(after, rng);
            std::vector<std::string> doc = before;
            doc.insert(doc.end(), signal.begin(), signal.end());
            doc.insert(doc.end(), after.begin(), after.end());
            cluster.documents.push_back(join(doc));
        }
        corpus.clusters.clusters.push_back(std::move(cluster));
    }

    corpus.params.beam_size = 4;
    corpus.params.min_len = static_cast<int>(o.signal_length);
    corpus.params.max_len = static_cast<int>(o.signal_length) + 1;
    corpus.params.block_repeat_ngram = 1;
    corpus.params.reduce = ReduceKind::mean_logprob;
    return corpus;
}

}  // namespace dyne
