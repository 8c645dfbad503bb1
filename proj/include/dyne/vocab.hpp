#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace dyne {

using TokenId = std::uint32_t;
using TokenSeq = std::vector<TokenId>;

inline constexpr TokenId kBos = 0;
inline constexpr TokenId kEos = 1;
inline constexpr TokenId kUnk = 2;

inline constexpr std::string_view kBosText = "<s>";
inline constexpr std::string_view kEosText = "</s>";
inline constexpr std::string_view kUnkText = "<unk>";

/// Bijective token string <-> id mapping. Ids 0, 1, 2 are always BOS, EOS
/// and UNK; at least one further content token is required.
class Vocab {
public:
    /// Builds from the full token list, reserved tokens included at the
    /// front. Throws validation error on duplicates or bad reserved slots.
    explicit Vocab(std::vector<std::string> tokens);

    /// Prepends the reserved tokens to `content`.
    static Vocab from_content(const std::vector<std::string>& content);

    std::size_t size() const noexcept { return tokens_.size(); }
    const std::string& token(TokenId id) const;
    std::optional<TokenId> find(std::string_view text) const;
    /// Unknown strings map to UNK.
    TokenId id_or_unk(std::string_view text) const;
    const std::vector<std::string>& tokens() const noexcept { return tokens_; }

    bool contains(TokenId id) const noexcept { return id < tokens_.size(); }

    friend bool operator==(const Vocab& a, const Vocab& b) { return a.tokens_ == b.tokens_; }

private:
    std::vector<std::string> tokens_;
    std::unordered_map<std::string, TokenId> index_;
};

/// Joins token strings with single spaces.
std::string detokenize(const Vocab& vocab, std::span<const TokenId> ids);

}  // namespace dyne
