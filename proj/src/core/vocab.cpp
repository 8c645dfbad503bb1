#include "dyne/vocab.hpp"

#include <algorithm>
#include <cctype>

#include "dyne/error.hpp"

namespace dyne {

namespace {

bool has_space(std::string_view s) {
    return std::any_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c) != 0; });
}

}  // namespace

Vocab::Vocab(std::vector<std::string> tokens) : tokens_(std::move(tokens)) {
    if (tokens_.size() < 4) {
        fail(ErrorKind::validation, "vocabulary needs the three reserved tokens plus at least one content token, got " +
                                        std::to_string(tokens_.size()) + " tokens");
    }
    if (tokens_[kBos] != kBosText || tokens_[kEos] != kEosText || tokens_[kUnk] != kUnkText) {
        fail(ErrorKind::validation, "vocabulary must start with " + std::string(kBosText) + " " +
                                        std::string(kEosText) + " " + std::string(kUnkText));
    }
    index_.reserve(tokens_.size());
    for (std::size_t i = 0; i < tokens_.size(); ++i) {
        const auto& t = tokens_[i];
        if (t.empty() || has_space(t)) {
            fail(ErrorKind::validation, "token " + std::to_string(i) + " is empty or contains whitespace");
        }
        if (!index_.emplace(t, static_cast<TokenId>(i)).second) {
            fail(ErrorKind::validation, "duplicate token '" + t + "'");
        }
    }
}

Vocab Vocab::from_content(const std::vector<std::string>& content) {
    std::vector<std::string> all{std::string(kBosText), std::string(kEosText), std::string(kUnkText)};
    all.insert(all.end(), content.begin(), content.end());
    return Vocab(std::move(all));
}

const std::string& Vocab::token(TokenId id) const {
    if (!contains(id)) {
        fail(ErrorKind::input, "token id " + std::to_string(id) + " out of vocabulary range " +
                                   std::to_string(tokens_.size()));
    }
    return tokens_[id];
}

std::optional<TokenId> Vocab::find(std::string_view text) const {
    auto it = index_.find(std::string(text));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

TokenId Vocab::id_or_unk(std::string_view text) const {
    return find(text).value_or(kUnk);
}

std::string detokenize(const Vocab& vocab, std::span<const TokenId> ids) {
    std::string out;
    for (auto id : ids) {
        if (!out.empty()) out += ' ';
        out += vocab.token(id);
    }
    return out;
}

}  // namespace dyne
