#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "dyne/error.hpp"
#include "dyne/reduce.hpp"
#include "dyne/seqmodel.hpp"
#include "oracles.hpp"

using namespace dyne;

namespace {

LogProbVector random_distribution(std::mt19937_64& rng, std::size_t n, bool with_zero) {
    std::uniform_real_distribution<double> u(0.01, 1.0);
    std::vector<double> p(n);
    double total = 0.0;
    for (auto& x : p) total += (x = u(rng));
    if (with_zero) {
        total -= p[0];
        p[0] = 0.0;
    }
    LogProbVector out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = std::log(p[i] / total);
    return out;
}

}  // namespace

TEST(ReduceMeanLogprob, WorkedExampleIsExact) {
    const std::vector<LogProbVector> in{{-1.0, -2.0}, {-3.0, -2.0}};
    const auto out = reduce_mean_logprob(in);
    ASSERT_EQ(out.size(), 2u);
    EXPECT_EQ(out[0], -2.0);
    EXPECT_EQ(out[1], -2.0);
}

TEST(ReduceMeanLogprob, IdenticalAndSingleton) {
    std::mt19937_64 rng(1);
    for (int i = 0; i < 50; ++i) {
        const auto v = random_distribution(rng, 7, i % 2 == 0);
        EXPECT_EQ(reduce_mean_logprob(std::vector<LogProbVector>{v}), v);
        EXPECT_EQ(reduce_mean_logprob(std::vector<LogProbVector>{v, v}), v);
        EXPECT_EQ(reduce_mean_logprob(std::vector<LogProbVector>{v, v, v, v, v}), v);
    }
}

TEST(ReduceMeanLogprob, MatchesPlainMean) {
    std::mt19937_64 rng(2);
    for (int i = 0; i < 100; ++i) {
        std::vector<LogProbVector> in;
        for (int j = 0; j < 1 + i % 6; ++j) in.push_back(random_distribution(rng, 9, false));
        const auto out = reduce_mean_logprob(in);
        for (std::size_t w = 0; w < 9; ++w) {
            double s = 0.0;
            for (const auto& v : in) s += v[w];
            EXPECT_NEAR(out[w], s / static_cast<double>(in.size()), 1e-12);
        }
    }
}

TEST(ReduceMeanLogprob, NegInfPropagates) {
    const std::vector<LogProbVector> in{{-INFINITY, -1.0}, {-0.5, -1.0}};
    const auto out = reduce_mean_logprob(in);
    EXPECT_EQ(out[0], -INFINITY);
    EXPECT_EQ(out[1], -1.0);
}

TEST(ReduceMeanProb, WorkedExample) {
    const std::vector<LogProbVector> in{{std::log(0.2), std::log(0.8)}, {std::log(0.6), std::log(0.4)}};
    const auto out = reduce_mean_prob(in);
    EXPECT_NEAR(out[0], std::log(0.4), 1e-12);
    EXPECT_NEAR(out[1], std::log(0.6), 1e-12);
}

TEST(ReduceMeanProb, IdenticalAndUniform) {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 50; ++i) {
        const auto v = random_distribution(rng, 6, i % 3 == 0);
        const auto out = reduce_mean_prob(std::vector<LogProbVector>{v, v});
        for (std::size_t w = 0; w < v.size(); ++w) {
            if (std::isinf(v[w])) {
                EXPECT_EQ(out[w], v[w]);
            } else {
                EXPECT_NEAR(out[w], v[w], 1e-12);
            }
        }
        // A single input passes through unchanged.
        EXPECT_EQ(reduce_mean_prob(std::vector<LogProbVector>{v}), v);
    }
    const LogProbVector uni(4, std::log(0.25));
    const auto out = reduce_mean_prob(std::vector<LogProbVector>{uni, uni, uni});
    for (double x : out) EXPECT_EQ(x, std::log(0.25));
}

TEST(ReduceMeanProb, PreservesNormalization) {
    std::mt19937_64 rng(4);
    for (int i = 0; i < 500; ++i) {
        std::vector<LogProbVector> in;
        for (int j = 0; j < 1 + i % 7; ++j) in.push_back(random_distribution(rng, 3 + i % 11, j % 2 == 1));
        EXPECT_LE(std::abs(logsumexp(reduce_mean_prob(in))), 1e-9);
    }
}

TEST(ReduceMeanProb, MatchesPlainArithmetic) {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 100; ++i) {
        std::vector<LogProbVector> in;
        for (int j = 0; j < 2 + i % 4; ++j) in.push_back(random_distribution(rng, 5, false));
        const auto out = reduce_mean_prob(in);
        for (std::size_t w = 0; w < 5; ++w) {
            double s = 0.0;
            for (const auto& v : in) s += std::exp(v[w]);
            EXPECT_NEAR(out[w], std::log(s / static_cast<double>(in.size())), 1e-12);
        }
    }
}

TEST(ReduceMeanProb, StableForTinyProbabilities) {
    const std::vector<LogProbVector> in{{-900.0, -1000.0}, {-902.0, -1000.0}};
    const auto out = reduce_mean_prob(in);
    EXPECT_NEAR(out[0], -900.0 + std::log((1.0 + std::exp(-2.0)) / 2.0), 1e-12);
    EXPECT_EQ(out[1], -1000.0);
}

TEST(Reduce, ErrorPaths) {
    for (auto kind : {ReduceKind::mean_logprob, ReduceKind::mean_prob}) {
        try {
            reduce(kind, std::vector<LogProbVector>{});
            ADD_FAILURE();
        } catch (const Error& e) {
            EXPECT_EQ(e.kind(), ErrorKind::usage);
        }
        try {
            reduce(kind, std::vector<LogProbVector>{{0.0, -1.0}, {0.0}});
            ADD_FAILURE();
        } catch (const Error& e) {
            EXPECT_EQ(e.kind(), ErrorKind::shape);
        }
    }
}

TEST(Reduce, ReduceValuesAgreesWithVectorForm) {
    std::mt19937_64 rng(6);
    for (int i = 0; i < 100; ++i) {
        std::vector<LogProbVector> in;
        for (int j = 0; j < 1 + i % 5; ++j) in.push_back(random_distribution(rng, 4, j == 0));
        for (auto kind : {ReduceKind::mean_logprob, ReduceKind::mean_prob}) {
            const auto out = reduce(kind, in);
            for (std::size_t w = 0; w < 4; ++w) {
                std::vector<double> col;
                for (const auto& v : in) col.push_back(v[w]);
                EXPECT_EQ(reduce_values(kind, col), out[w]);
            }
        }
    }
}

TEST(Reduce, NamesRoundTrip) {
    for (auto kind : {ReduceKind::mean_logprob, ReduceKind::mean_prob}) {
        EXPECT_EQ(parse_reduce_kind(to_string(kind)), kind);
    }
    EXPECT_FALSE(parse_reduce_kind("max"));
}

TEST(Logsumexp, Basics) {
    EXPECT_NEAR(logsumexp(std::vector<double>{std::log(0.25), std::log(0.75)}), 0.0, 1e-15);
    EXPECT_EQ(logsumexp(std::vector<double>{-INFINITY, -INFINITY}), -INFINITY);
    EXPECT_NEAR(logsumexp(std::vector<double>{1000.0, 1000.0}), 1000.0 + std::log(2.0), 1e-12);
}
