#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "dyne/decoder.hpp"
#include "dyne/error.hpp"
#include "dyne/provenance.hpp"
#include "oracles.hpp"

using namespace dyne;

namespace {

TraceMatrix random_trace(std::mt19937_64& rng, const Vocab& vocab, std::size_t rows, std::size_t width) {
    std::uniform_real_distribution<double> val(-40.0, 0.0);
    std::uniform_int_distribution<TokenId> tok(1, static_cast<TokenId>(vocab.size() - 1));
    TraceMatrix t;
    for (std::size_t i = 0; i < width; ++i) t.input_labels.push_back("doc_" + std::to_string(i));
    for (std::size_t r = 0; r < rows; ++r) {
        std::vector<double> cells(width);
        for (auto& c : cells) c = val(rng);
        if (r == 3) cells[0] = -INFINITY;
        const TokenId id = tok(rng);
        record_step(t, id, vocab.token(id), reduce_values(ReduceKind::mean_prob, cells), cells);
    }
    return t;
}

}  // namespace

TEST(RecordStep, AppendsRows) {
    TraceMatrix t;
    t.input_labels = {"x", "y"};
    record_step(t, 3, "a", -1.0, {-0.5, -1.5});
    ASSERT_EQ(t.rows.size(), 1u);
    const auto first = t.rows[0];
    record_step(t, 1, "</s>", -2.0, {-2.0, -2.0});
    ASSERT_EQ(t.rows.size(), 2u);
    EXPECT_EQ(t.rows[0], first);
}

TEST(RecordStep, HalfQuarterRowIsConsistent) {
    TraceMatrix t;
    t.input_labels = {"x", "y"};
    const std::vector<double> cells{std::log(0.5), std::log(0.25)};
    const double combined = reduce_values(ReduceKind::mean_logprob, cells);
    EXPECT_NEAR(combined, -1.0397, 1e-4);
    record_step(t, 3, "a", combined, cells);
    EXPECT_LE(max_reduce_residual(t, ReduceKind::mean_logprob), 1e-9);
}

TEST(RecordStep, WidthMismatchLeavesTraceUnchanged) {
    TraceMatrix t;
    t.input_labels = {"x", "y"};
    record_step(t, 3, "a", -1.0, {-1.0, -1.0});
    const auto before = t;
    try {
        record_step(t, 3, "a", -1.0, {-1.0});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::shape);
    }
    EXPECT_EQ(t, before);
}

TEST(InputTotals, ColumnSums) {
    TraceMatrix t;
    t.input_labels = {"x", "y"};
    record_step(t, 3, "a", -1.5, {-1.0, -2.0});
    record_step(t, 1, "</s>", -3.5, {-3.0, -4.0});
    EXPECT_EQ(input_totals(t), (std::vector<double>{-4.0, -6.0}));
    EXPECT_EQ(combined_total(t), -5.0);

    TraceMatrix empty;
    empty.input_labels = {"x"};
    try {
        input_totals(empty);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::usage);
    }
}

TEST(InputTotals, SingleInputEqualsRawScore) {
    std::mt19937_64 rng(1);
    auto m = make_toy_model(dyne::testing::random_toy_spec(rng, 6));
    const std::vector<TokenSeq> inputs{{3, 4, 4}};
    DecodeParams p;
    p.max_len = 6;
    const auto out = beam_search(*m, inputs, p);
    for (const auto& h : out) EXPECT_EQ(input_totals(h.trace), (std::vector<double>{h.raw_score}));
}

TEST(InputTotals, DuplicatedInputsHaveEqualTotals) {
    std::mt19937_64 rng(2);
    auto m = make_toy_model(dyne::testing::random_toy_spec(rng, 6));
    const TokenSeq x{3, 5, 4};
    const std::vector<TokenSeq> inputs{x, x, x};
    DecodeParams p;
    p.max_len = 6;
    p.min_len = 2;
    for (const auto& h : beam_search(*m, inputs, p)) {
        const auto totals = input_totals(h.trace);
        EXPECT_EQ(totals[0], totals[1]);
        EXPECT_EQ(totals[1], totals[2]);
    }
}

TEST(ExportTrace, OneRowCsvHasTwoLines) {
    TraceMatrix t;
    t.input_labels = {"doc_0", "doc_1"};
    record_step(t, 1, "</s>", -0.5, {-0.25, -0.75});
    const auto csv = export_trace(t, TraceFormat::csv);
    std::istringstream in(csv);
    std::vector<std::string> lines;
    for (std::string l; std::getline(in, l);) lines.push_back(l);
    ASSERT_EQ(lines.size(), 2u);
    EXPECT_EQ(lines[0], "timestep,token,combined,doc_0,doc_1");
    EXPECT_EQ(lines[1].substr(0, 7), "0,</s>,");
}

TEST(ExportTrace, CsvNumbersCarryEnoughDigits) {
    TraceMatrix t;
    t.input_labels = {"x"};
    record_step(t, 3, "a", -1.0 / 3.0, {-2.0 / 3.0});
    const auto csv = export_trace(t, TraceFormat::csv);
    const auto row = csv.substr(csv.find('\n') + 1);
    const auto field = row.substr(row.find(',', 2) + 1, row.rfind(',') - row.find(',', 2) - 1);
    std::size_t digits = 0;
    for (char c : field.substr(0, field.find('e'))) digits += std::isdigit(static_cast<unsigned char>(c)) ? 1 : 0;
    EXPECT_GE(digits, 9u) << field;
}

TEST(ExportTrace, CsvRoundTripTwentyRows) {
    std::mt19937_64 rng(3);
    auto vocab = Vocab::from_content({"a", "b,c", "d\"e", "f"});
    for (int rep = 0; rep < 10; ++rep) {
        const auto t = random_trace(rng, vocab, 20, 1 + rep % 4);
        EXPECT_EQ(parse_trace_csv(export_trace(t, TraceFormat::csv), vocab), t);
    }
}

TEST(ExportTrace, JsonRoundTripTwentyRows) {
    std::mt19937_64 rng(4);
    auto vocab = Vocab::from_content({"a", "b", "\"q\"", "f"});
    for (int rep = 0; rep < 10; ++rep) {
        const auto t = random_trace(rng, vocab, 20, 1 + rep % 4);
        EXPECT_EQ(parse_trace_json(export_trace(t, TraceFormat::json)), t);
    }
}

TEST(ExportTrace, JsonFollowsSchema) {
    std::mt19937_64 rng(5);
    auto vocab = Vocab::from_content({"a", "b"});
    const auto t = random_trace(rng, vocab, 5, 3);
    const auto doc = nlohmann::json::parse(export_trace(t, TraceFormat::json));
    ASSERT_TRUE(doc.is_object());
    ASSERT_EQ(doc.size(), 2u);
    ASSERT_TRUE(doc.at("input_labels").is_array());
    EXPECT_EQ(doc.at("input_labels").size(), 3u);
    for (const auto& l : doc.at("input_labels")) EXPECT_TRUE(l.is_string());
    ASSERT_TRUE(doc.at("rows").is_array());
    ASSERT_EQ(doc.at("rows").size(), 5u);
    std::size_t step = 0;
    for (const auto& row : doc.at("rows")) {
        ASSERT_TRUE(row.is_object());
        EXPECT_EQ(row.size(), 5u);
        EXPECT_EQ(row.at("timestep").get<std::size_t>(), step++);
        EXPECT_TRUE(row.at("token_id").is_number_unsigned());
        EXPECT_TRUE(row.at("token").is_string());
        const auto& c = row.at("combined");
        EXPECT_TRUE(c.is_number() || c == "-inf");
        ASSERT_TRUE(row.at("per_input").is_array());
        EXPECT_EQ(row.at("per_input").size(), 3u);
        for (const auto& cell : row.at("per_input")) EXPECT_TRUE(cell.is_number() || cell == "-inf");
    }
}

TEST(ParseTrace, RejectsMalformedInput) {
    auto vocab = Vocab::from_content({"a"});
    const std::vector<std::string> bad_csv = {
        "",
        "step,token,combined,x\n",
        "timestep,token,combined,x\n0,a,-1\n",
        "timestep,token,combined,x\n1,a,-1,-1\n",
        "timestep,token,combined,x\n0,zz,-1,-1\n",
        "timestep,token,combined,x\n0,a,abc,-1\n",
    };
    for (const auto& s : bad_csv) {
        try {
            parse_trace_csv(s, vocab);
            ADD_FAILURE() << s;
        } catch (const Error& e) {
            EXPECT_EQ(e.kind(), ErrorKind::format);
        }
    }
    for (const std::string s : {"{", "{\"rows\":[]}", "{\"input_labels\":[\"x\"],\"rows\":[{\"timestep\":0}]}"}) {
        try {
            parse_trace_json(s);
            ADD_FAILURE() << s;
        } catch (const Error& e) {
            EXPECT_EQ(e.kind(), ErrorKind::format);
        }
    }
}

TEST(DecodedTraces, CellsMatchIndependentScoreNext) {
    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 30; ++trial) {
        auto m = make_toy_model(dyne::testing::random_toy_spec(rng, 7));
        std::vector<TokenSeq> inputs;
        for (int j = 0; j < 3; ++j) inputs.push_back(dyne::testing::random_input(rng, 7, 6));
        DecodeParams p;
        p.max_len = 6;
        p.min_len = 1;
        p.reduce = trial % 2 ? ReduceKind::mean_prob : ReduceKind::mean_logprob;
        for (const auto& h : beam_search(*m, inputs, p)) {
            EXPECT_LE(max_reduce_residual(h.trace, p.reduce), 1e-9);
            TokenSeq prefix{kBos};
            for (std::size_t t = 0; t < h.tokens.size(); ++t) {
                const auto& row = h.trace.rows[t];
                EXPECT_EQ(row.token, h.tokens[t]);
                EXPECT_EQ(row.text, m->vocab().token(h.tokens[t]));
                for (std::size_t i = 0; i < inputs.size(); ++i) {
                    EXPECT_EQ(row.per_input[i], m->score_next(inputs[i], prefix)[h.tokens[t]]);
                }
                prefix.push_back(h.tokens[t]);
            }
        }
    }
}
