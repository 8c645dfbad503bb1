#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dyne/vocab.hpp"

namespace dyne {

/// Next-token distribution in log space, one entry per vocabulary id.
using LogProbVector = std::vector<double>;

/// A conditional sequence model p(y_t | x; y_0..t-1).
///
/// Implementations must be safe for concurrent score_next calls on a const
/// instance; the decoder fans per-input calls out across threads.
class SequenceModel {
public:
    virtual ~SequenceModel() = default;

    virtual const Vocab& vocab() const noexcept = 0;

    /// Returns a normalized LogProbVector of length vocab().size(). BOS is
    /// never predicted and always scores -inf.
    ///
    /// `prefix` must start with BOS and `input` must be non-empty; ids outside
    /// the vocabulary are rejected with an input error.
    virtual LogProbVector score_next(std::span<const TokenId> input,
                                     std::span<const TokenId> prefix) const = 0;
};

using SequenceModelHandle = std::shared_ptr<const SequenceModel>;

/// Parameters of the copy/bigram mixture model:
///   p(w | x, prev) = lambda * copy(w | x) + (1 - lambda) * bigram(w | prev)
/// Both components are add-k smoothed over every token except BOS.
struct ToyModelSpec {
    double lambda = 0.5;
    double smooth_k = 1.0;
    Vocab vocab = Vocab::from_content({"a"});
    std::map<std::pair<TokenId, TokenId>, std::uint64_t> bigram_counts;

    /// Throws validation error if lambda is outside [0,1], smooth_k <= 0, or a
    /// bigram references an id out of range, predicts BOS or follows EOS.
    void validate() const;

    friend bool operator==(const ToyModelSpec&, const ToyModelSpec&) = default;
};

/// Canonical text form, see README "Toy model file". Parsing reports the
/// offending line and field.
std::string serialize_toy_spec(const ToyModelSpec& spec);
ToyModelSpec parse_toy_spec(std::string_view text);

void save_toy_spec(const ToyModelSpec& spec, const std::filesystem::path& path);

SequenceModelHandle make_toy_model(ToyModelSpec spec);

/// Uniform over every token except BOS.
SequenceModelHandle make_uniform_model(Vocab vocab);

/// Ignores both input and prefix and returns `probs` (linear space, indexed
/// by id). Probabilities must sum to 1 within 1e-9 and BOS must be 0.
SequenceModelHandle make_fixed_model(Vocab vocab, const std::vector<double>& probs);

/// `kind` is "toy" (copy/bigram mixture) or "uniform" (same file format,
/// only the vocabulary is used).
SequenceModelHandle load_model(const std::filesystem::path& path, std::string_view kind);

/// Shared argument checks for model implementations.
void check_model_arguments(const Vocab& vocab, std::span<const TokenId> input,
                           std::span<const TokenId> prefix);

}  // namespace dyne
