#include "dyne/porter.hpp"

#include <algorithm>
#include <array>
#include <utility>

namespace dyne {

namespace {

class Stemmer {
public:
    explicit Stemmer(std::string_view w) : s_(w) {}

    std::string run() {
        step1ab();
        step1c();
        step2();
        step3();
        step4();
        step5();
        return std::move(s_);
    }

private:
    bool cons(std::size_t i) const {
        switch (s_[i]) {
            case 'a': case 'e': case 'i': case 'o': case 'u': return false;
            case 'y': return i == 0 || !cons(i - 1);
            default: return true;
        }
    }

    // Number of VC sequences in s_[0, len).
    int measure(std::size_t len) const {
        int n = 0;
        std::size_t i = 0;
        while (true) {
            if (i >= len) return n;
            if (!cons(i)) break;
            ++i;
        }
        ++i;
        while (true) {
            while (true) {
                if (i >= len) return n;
                if (cons(i)) break;
                ++i;
            }
            ++i;
            ++n;
            while (true) {
                if (i >= len) return n;
                if (!cons(i)) break;
                ++i;
            }
            ++i;
        }
    }

    bool vowel_in(std::size_t len) const {
        for (std::size_t i = 0; i < len; ++i) {
            if (!cons(i)) return true;
        }
        return false;
    }

    bool double_cons(std::size_t i) const { return i >= 1 && s_[i] == s_[i - 1] && cons(i); }

    bool cvc(std::size_t i) const {
        if (i < 2 || !cons(i) || cons(i - 1) || !cons(i - 2)) return false;
        const char c = s_[i];
        return c != 'w' && c != 'x' && c != 'y';
    }

    bool ends(std::string_view suffix) const {
        return s_.size() >= suffix.size() && std::string_view(s_).substr(s_.size() - suffix.size()) == suffix;
    }

    std::size_t stem_len(std::string_view suffix) const { return s_.size() - suffix.size(); }

    void replace_suffix(std::string_view suffix, std::string_view with) {
        s_.resize(stem_len(suffix));
        s_ += with;
    }

    using Rule = std::pair<std::string_view, std::string_view>;

    // First rule whose suffix matches decides; it fires only if the stem
    // measure exceeds `min_measure`.
    template <std::size_t N>
    void apply_first(const std::array<Rule, N>& rules, int min_measure) {
        for (const auto& [suffix, with] : rules) {
            if (!ends(suffix)) continue;
            if (measure(stem_len(suffix)) > min_measure) replace_suffix(suffix, with);
            return;
        }
    }

    void step1ab() {
        if (ends("sses")) {
            replace_suffix("sses", "ss");
        } else if (ends("ies")) {
            replace_suffix("ies", "i");
        } else if (!ends("ss") && ends("s")) {
            s_.pop_back();
        }

        if (ends("eed")) {
            if (measure(stem_len("eed")) > 0) s_.pop_back();
            return;
        }
        std::string_view suffix;
        if (ends("ed")) {
            suffix = "ed";
        } else if (ends("ing")) {
            suffix = "ing";
        } else {
            return;
        }
        if (!vowel_in(stem_len(suffix))) return;
        s_.resize(stem_len(suffix));
        if (ends("at") || ends("bl") || ends("iz")) {
            s_ += 'e';
        } else if (double_cons(s_.size() - 1)) {
            const char c = s_.back();
            if (c != 'l' && c != 's' && c != 'z') s_.pop_back();
        } else if (measure(s_.size()) == 1 && cvc(s_.size() - 1)) {
            s_ += 'e';
        }
    }

    void step1c() {
        if (ends("y") && vowel_in(s_.size() - 1)) s_.back() = 'i';
    }

    void step2() {
        static constexpr std::array<Rule, 20> rules{{
            {"ational", "ate"}, {"tional", "tion"}, {"enci", "ence"},   {"anci", "ance"},   {"izer", "ize"},
            {"abli", "able"},   {"alli", "al"},     {"entli", "ent"},   {"eli", "e"},       {"ousli", "ous"},
            {"ization", "ize"}, {"ation", "ate"},   {"ator", "ate"},    {"alism", "al"},    {"iveness", "ive"},
            {"fulness", "ful"}, {"ousness", "ous"}, {"aliti", "al"},    {"iviti", "ive"},   {"biliti", "ble"},
        }};
        apply_first(rules, 0);
    }

    void step3() {
        static constexpr std::array<Rule, 7> rules{{
            {"icate", "ic"}, {"ative", ""}, {"alize", "al"}, {"iciti", "ic"}, {"ical", "ic"}, {"ful", ""}, {"ness", ""},
        }};
        apply_first(rules, 0);
    }

    void step4() {
        static constexpr std::array<std::string_view, 19> suffixes{
            "al",  "ance", "ence", "er",  "ic",  "able", "ible", "ant", "ement", "ment",
            "ent", "ion",  "ou",   "ism", "ate", "iti",  "ous",  "ive", "ize",
        };
        // Longest match among suffixes sharing an ending (ement/ment/ent).
        std::string_view match;
        for (auto suffix : suffixes) {
            if (ends(suffix) && suffix.size() > match.size()) match = suffix;
        }
        if (match.empty()) return;
        const std::size_t len = stem_len(match);
        if (match == "ion" && !(len > 0 && (s_[len - 1] == 's' || s_[len - 1] == 't'))) return;
        if (measure(len) > 1) s_.resize(len);
    }

    void step5() {
        if (ends("e")) {
            const std::size_t len = s_.size() - 1;
            const int m = measure(len);
            if (m > 1 || (m == 1 && !(len >= 1 && cvc(len - 1)))) s_.pop_back();
        }
        if (ends("ll") && measure(s_.size()) > 1) s_.pop_back();
    }

    std::string s_;
};

}  // namespace

std::string porter_stem(std::string_view word) {
    if (word.size() <= 2) return std::string(word);
    if (!std::all_of(word.begin(), word.end(), [](char c) { return c >= 'a' && c <= 'z'; })) {
        return std::string(word);
    }
    return Stemmer(word).run();
}

}  // namespace dyne
