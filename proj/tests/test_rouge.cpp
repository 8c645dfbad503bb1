#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <random>

#include "dyne/error.hpp"
#include "dyne/rouge.hpp"

using namespace dyne::rouge;
using dyne::Error;
using dyne::ErrorKind;

namespace {

const RougeConfig kDefault{};

std::vector<std::string> refs(std::initializer_list<const char*> r) { return {r.begin(), r.end()}; }

std::string random_sentence(std::mt19937_64& rng, std::size_t max_len, int alphabet) {
    std::uniform_int_distribution<std::size_t> len(1, max_len);
    std::uniform_int_distribution<int> w(0, alphabet - 1);
    std::string s;
    for (std::size_t i = 0, n = len(rng); i < n; ++i) {
        if (i) s += ' ';
        s += static_cast<char>('a' + w(rng));
    }
    return s;
}

// Independent overlap count over explicit n-gram vectors.
RougeScore oracle_rouge_n(const std::string& hyp, const std::string& ref, int n) {
    auto grams = [n](const std::string& s) {
        std::vector<std::string> toks;
        std::string cur;
        for (char c : s + " ") {
            if (c == ' ') {
                if (!cur.empty()) toks.push_back(cur);
                cur.clear();
            } else {
                cur += c;
            }
        }
        std::vector<std::vector<std::string>> out;
        for (std::size_t i = 0; i + n <= toks.size(); ++i) out.emplace_back(toks.begin() + i, toks.begin() + i + n);
        return out;
    };
    auto h = grams(hyp);
    auto r = grams(ref);
    std::vector<bool> used(r.size(), false);
    std::size_t overlap = 0;
    for (const auto& g : h) {
        for (std::size_t j = 0; j < r.size(); ++j) {
            if (!used[j] && r[j] == g) {
                used[j] = true;
                ++overlap;
                break;
            }
        }
    }
    RougeScore s;
    s.precision = h.empty() ? 0.0 : static_cast<double>(overlap) / h.size();
    s.recall = r.empty() ? 0.0 : static_cast<double>(overlap) / r.size();
    s.f = s.precision + s.recall > 0 ? 2 * s.precision * s.recall / (s.precision + s.recall) : 0.0;
    return s;
}

}  // namespace

TEST(RougeN, Identity) {
    const auto s = rouge_n("the cat sat", refs({"the cat sat"}), 1, kDefault);
    EXPECT_EQ(s.precision, 1.0);
    EXPECT_EQ(s.recall, 1.0);
    EXPECT_EQ(s.f, 1.0);
}

TEST(RougeN, PartialOverlap) {
    const auto s = rouge_n("the cat", refs({"the cat sat"}), 1, kDefault);
    EXPECT_NEAR(s.precision, 1.0, 1e-12);
    EXPECT_NEAR(s.recall, 2.0 / 3.0, 1e-12);
    EXPECT_NEAR(s.f, 0.8, 1e-9);
}

TEST(RougeN, ClippedCounts) {
    const auto s = rouge_n("a a a", refs({"a b"}), 1, kDefault);
    EXPECT_NEAR(s.precision, 1.0 / 3.0, 1e-12);
    EXPECT_NEAR(s.recall, 0.5, 1e-12);
    EXPECT_NEAR(s.f, 0.4, 1e-12);
}

TEST(RougeN, ShortHypothesisScoresZero) {
    const auto s = rouge_n("cat", refs({"the cat sat"}), 2, kDefault);
    EXPECT_EQ(s.precision, 0.0);
    EXPECT_EQ(s.recall, 0.0);
    EXPECT_EQ(s.f, 0.0);
    EXPECT_EQ(rouge_n("", refs({"x"}), 1, kDefault).f, 0.0);
}

TEST(RougeN, MatchesOracle) {
    std::mt19937_64 rng(1);
    for (int i = 0; i < 500; ++i) {
        const auto hyp = random_sentence(rng, 12, 5);
        const auto ref = random_sentence(rng, 12, 5);
        for (int n = 1; n <= 3; ++n) {
            const auto got = rouge_n(hyp, std::vector<std::string>{ref}, n, kDefault);
            const auto want = oracle_rouge_n(hyp, ref, n);
            EXPECT_NEAR(got.precision, want.precision, 1e-12);
            EXPECT_NEAR(got.recall, want.recall, 1e-12);
            EXPECT_NEAR(got.f, want.f, 1e-12);
        }
    }
}

TEST(RougeL, Examples) {
    const auto same = rouge_l("a b c d", refs({"a b c d"}), kDefault);
    EXPECT_EQ(same.f, 1.0);
    const auto s = rouge_l("a c b", refs({"a b c"}), kDefault);
    EXPECT_NEAR(s.precision, 2.0 / 3.0, 1e-12);
    EXPECT_NEAR(s.recall, 2.0 / 3.0, 1e-12);
    const auto d = rouge_l("x y", refs({"a b c"}), kDefault);
    EXPECT_EQ(d.precision, 0.0);
    EXPECT_EQ(d.recall, 0.0);
    EXPECT_EQ(d.f, 0.0);
    EXPECT_EQ(rouge_n("x y", refs({"a b c"}), 1, kDefault).f, 0.0);
}

TEST(RougeL, SubsequenceHasFullPrecision) {
    std::mt19937_64 rng(2);
    for (int i = 0; i < 200; ++i) {
        const auto ref = random_sentence(rng, 15, 6);
        std::vector<std::string> toks;
        for (std::size_t p = 0; p < ref.size(); p += 2) toks.push_back(ref.substr(p, 1));
        std::string hyp;
        for (std::size_t j = 0; j < toks.size(); ++j) {
            if (rng() % 2) hyp += (hyp.empty() ? "" : " ") + toks[j];
        }
        if (hyp.empty()) hyp = toks[0];
        EXPECT_EQ(rouge_l(hyp, std::vector<std::string>{ref}, kDefault).precision, 1.0) << hyp << " | " << ref;
    }
}

TEST(Rouge, SelfScoreIsOne) {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 200; ++i) {
        const auto s = random_sentence(rng, 10, 4);
        const std::vector<std::string> r{s};
        for (int n = 1; n <= 4; ++n) {
            const std::size_t tokens = (s.size() + 1) / 2;
            if (tokens >= static_cast<std::size_t>(n)) {
                EXPECT_EQ(rouge_n(s, r, n, kDefault).f, 1.0);
            }
        }
        EXPECT_EQ(rouge_l(s, r, kDefault).f, 1.0);
    }
}

TEST(Rouge, ScoresBoundedAndFBetweenPAndR) {
    std::mt19937_64 rng(4);
    for (int i = 0; i < 500; ++i) {
        const auto hyp = random_sentence(rng, 10, 4);
        const std::vector<std::string> r{random_sentence(rng, 10, 4)};
        for (const auto& m : {Metric::rouge_n(1), Metric::rouge_n(2), Metric::rouge_l()}) {
            const auto s = score(m, hyp, r, kDefault);
            for (double v : {s.precision, s.recall, s.f}) {
                EXPECT_GE(v, 0.0);
                EXPECT_LE(v, 1.0);
            }
            EXPECT_GE(s.f, std::min(s.precision, s.recall) - 1e-15);
            EXPECT_LE(s.f, std::max(s.precision, s.recall) + 1e-15);
        }
    }
}

TEST(Rouge, AddingReferenceNeverLowersMax) {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 300; ++i) {
        const auto hyp = random_sentence(rng, 8, 5);
        std::vector<std::string> r{random_sentence(rng, 8, 5)};
        for (const auto& m : {Metric::rouge_n(1), Metric::rouge_n(2), Metric::rouge_l()}) {
            const double before = score(m, hyp, r, kDefault).f;
            auto more = r;
            more.push_back(random_sentence(rng, 8, 5));
            EXPECT_GE(score(m, hyp, more, kDefault).f, before);
        }
    }
}

TEST(Rouge, AverageOverReferences) {
    RougeConfig cfg;
    cfg.multi_ref = MultiRef::average_over_refs;
    const auto s = rouge_n("a b", refs({"a b", "c d"}), 1, cfg);
    EXPECT_DOUBLE_EQ(s.f, 0.5);
    EXPECT_EQ(rouge_n("a b", refs({"a b", "c d"}), 1, kDefault).f, 1.0);
}

TEST(Rouge, BetaWeightsRecall) {
    RougeConfig cfg;
    cfg.beta = 2.0;
    const auto s = rouge_n("the cat", refs({"the cat sat"}), 1, cfg);
    EXPECT_NEAR(s.f, 5.0 * 1.0 * (2.0 / 3.0) / (2.0 / 3.0 + 4.0), 1e-12);
    cfg.beta = 0.0;
    EXPECT_THROW(rouge_n("a", refs({"a"}), 1, cfg), Error);
}

TEST(Rouge, ConventionsAreConfigurable) {
    RougeConfig raw;
    raw.lowercase = false;
    EXPECT_EQ(rouge_n("The Cat", refs({"the cat"}), 1, raw).f, 0.0);
    EXPECT_EQ(rouge_n("The Cat", refs({"the cat"}), 1, kDefault).f, 1.0);

    EXPECT_LT(rouge_n("cat, sat.", refs({"cat sat"}), 1, kDefault).f, 1.0);
    auto norm = *profile("normalized");
    EXPECT_EQ(rouge_n("cat, sat.", refs({"cat sat"}), 1, norm).f, 1.0);
    EXPECT_EQ(rouge_n("running cats", refs({"run cat"}), 1, norm).f, 1.0);
    EXPECT_FALSE(profile("nonsense"));
}

TEST(Rouge, ErrorPaths) {
    try {
        rouge_n("a", refs({"a", "  "}), 1, kDefault);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::input);
    }
    try {
        rouge_l("a", std::vector<std::string>{}, kDefault);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::usage);
    }
    EXPECT_THROW(rouge_n("a", refs({"a"}), 0, kDefault), Error);
}

TEST(EvaluateCorpus, MeansAndOrderInvariance) {
    const std::vector<Metric> metrics{Metric::rouge_n(1), Metric::rouge_n(2), Metric::rouge_l()};
    std::vector<ScoredPair> one{{"the cat", {"the cat sat"}}};
    const auto single = evaluate_corpus(one, kDefault, metrics);
    EXPECT_NEAR(single.at(Metric::rouge_n(1)).f, 0.8, 1e-12);

    std::vector<ScoredPair> two{{"x y", {"x y"}}, {"p q", {"x y"}}};
    EXPECT_DOUBLE_EQ(evaluate_corpus(two, kDefault, metrics).at(Metric::rouge_n(1)).f, 0.5);

    std::mt19937_64 rng(6);
    std::vector<ScoredPair> many;
    for (int i = 0; i < 30; ++i) many.push_back({random_sentence(rng, 8, 5), {random_sentence(rng, 8, 5)}});
    const auto a = evaluate_corpus(many, kDefault, metrics);
    std::shuffle(many.begin(), many.end(), rng);
    const auto b = evaluate_corpus(many, kDefault, metrics);
    for (const auto& m : metrics) {
        EXPECT_NEAR(a.at(m).precision, b.at(m).precision, 1e-12);
        EXPECT_NEAR(a.at(m).recall, b.at(m).recall, 1e-12);
        EXPECT_NEAR(a.at(m).f, b.at(m).f, 1e-12);
    }
    EXPECT_THROW(evaluate_corpus(std::vector<ScoredPair>{}, kDefault, metrics), Error);
}

TEST(Metric, Names) {
    EXPECT_EQ(Metric::rouge_n(2).name(), "rouge-2");
    EXPECT_EQ(Metric::rouge_l().name(), "rouge-l");
    EXPECT_EQ(Metric::parse("rouge-1"), Metric::rouge_n(1));
    EXPECT_EQ(Metric::parse("rouge-l"), Metric::rouge_l());
    EXPECT_FALSE(Metric::parse("bleu"));
}
