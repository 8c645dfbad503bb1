#include "dyne/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <memory>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "dyne/data.hpp"
#include "dyne/error.hpp"
#include "dyne/seqmodel.hpp"
#include "dyne/synthetic.hpp"
#include "dyne/text_util.hpp"
#include "dyne/thread_pool.hpp"

namespace dyne::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::vector<rouge::Metric> kMetrics{rouge::Metric::rouge_n(1), rouge::Metric::rouge_n(2),
                                          rouge::Metric::rouge_l()};

void write_file_atomic(const fs::path& path, const std::string& content) {
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) fail(ErrorKind::io, "cannot write " + tmp.string());
        out << content;
        out.flush();
        if (!out) fail(ErrorKind::io, "failed writing " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) fail(ErrorKind::io, "cannot rename " + tmp.string() + ": " + ec.message());
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::io, "cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string safe_name(std::string_view id) {
    std::string out;
    for (char c : id) {
        const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '-' ||
                        c == '_' || c == '.';
        out += ok ? c : '_';
    }
    return out;
}

std::string trace_file_name(std::size_t index, std::string_view id, TraceFormat format) {
    std::ostringstream name;
    name << std::setw(4) << std::setfill('0') << index << '_' << safe_name(id)
         << (format == TraceFormat::csv ? ".csv" : ".json");
    return name.str();
}

std::string toml_string(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

std::string error_message(const std::exception& e) {
    if (const auto* de = dynamic_cast<const Error*>(&e)) return std::string(to_string(de->kind())) + ": " + de->what();
    return e.what();
}

json scores_json(const std::map<rouge::Metric, rouge::RougeScore>& scores) {
    json out = json::object();
    for (const auto& [metric, s] : scores) {
        out[metric.name()] = {{"precision", s.precision}, {"recall", s.recall}, {"f", s.f}};
    }
    return out;
}

// Decodes one cluster and writes its trace; returns the summaries line.
std::string decode_cluster(const SequenceModel& model, const Cluster& cluster, std::size_t index,
                           const RunConfig& cfg, const fs::path& trace_dir) {
    const auto chosen = select_document_indices(cluster, cfg.max_docs, cfg.decode.seed);
    std::vector<TokenSeq> inputs;
    DecodeContext ctx;
    for (auto i : chosen) {
        inputs.push_back(tokenize_and_truncate(cluster.documents[i], model.vocab(), cfg.max_tokens));
        ctx.input_labels.push_back("doc_" + std::to_string(i));
    }
    const auto hyps = beam_search(model, inputs, cfg.decode, ctx);
    const ScoredHypothesis& best = hyps.front();

    write_file_atomic(trace_dir / trace_file_name(index, cluster.id, cfg.trace_format),
                      export_trace(best.trace, cfg.trace_format));

    std::vector<std::string> token_text;
    for (auto t : best.tokens) token_text.push_back(model.vocab().token(t));
    const std::span<const TokenId> content(best.tokens.data(), best.content_length());
    json record = {{"id", cluster.id},
                   {"summary", detokenize(model.vocab(), content)},
                   {"tokens", token_text},
                   {"raw_score", best.raw_score},
                   {"ranked_score", best.ranked_score},
                   {"documents", chosen}};
    return record.dump();
}

struct Hypothesis {
    std::string id;
    std::string summary;
    std::vector<std::string> tokens;
};

std::vector<Hypothesis> load_hypotheses(const fs::path& path) {
    std::istringstream in(read_file(path));
    std::vector<Hypothesis> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (split_whitespace(line).empty()) continue;
        try {
            const json obj = json::parse(line);
            Hypothesis h;
            h.id = obj.at("id").get<std::string>();
            h.summary = obj.at("summary").get<std::string>();
            if (obj.contains("tokens")) h.tokens = obj["tokens"].get<std::vector<std::string>>();
            out.push_back(std::move(h));
        } catch (const json::exception& e) {
            fail(ErrorKind::format, path.string() + " line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return out;
}

}  // namespace

std::string RunConfig::to_toml() const {
    std::ostringstream out;
    out << "model = " << toml_string(model_path.generic_string()) << '\n';
    out << "model-kind = " << toml_string(model_kind) << '\n';
    out << "clusters = " << toml_string(clusters_path.generic_string()) << '\n';
    out << "beam = " << decode.beam_size << '\n';
    out << "min-len = " << decode.min_len << '\n';
    out << "max-len = " << decode.max_len << '\n';
    out << "reduce = " << toml_string(std::string(to_string(decode.reduce))) << '\n';
    out << "alpha = " << format_double(decode.length_penalty_alpha) << '\n';
    if (decode.block_repeat_ngram) out << "no-repeat-ngram = " << *decode.block_repeat_ngram << '\n';
    out << "seed = " << decode.seed << '\n';
    out << "max-docs = " << max_docs << '\n';
    out << "max-tokens = " << max_tokens << '\n';
    out << "trace-format = " << toml_string(trace_format == TraceFormat::csv ? "csv" : "json") << '\n';
    out << "lowercase = " << (rouge.lowercase ? "true" : "false") << '\n';
    out << "strip-punct = " << (rouge.strip_punctuation ? "true" : "false") << '\n';
    out << "stem = " << (rouge.use_porter_stemming ? "true" : "false") << '\n';
    out << "multi-ref = " << toml_string(rouge.multi_ref == rouge::MultiRef::max_over_refs ? "max" : "average")
        << '\n';
    out << "beta = " << format_double(rouge.beta) << '\n';
    return out.str();
}

std::string EvaluationReport::to_json() const {
    json doc;
    doc["mean"] = scores_json(mean);
    doc["clusters"] = json::array();
    for (const auto& c : clusters) {
        json entry = scores_json(c.scores);
        entry["id"] = c.id;
        doc["clusters"].push_back(std::move(entry));
    }
    return doc.dump(2) + "\n";
}

std::string EvaluationReport::to_text() const {
    std::ostringstream out;
    out << std::fixed << std::setprecision(4);
    out << std::left << std::setw(10) << "metric" << std::right << std::setw(10) << "P" << std::setw(10) << "R"
        << std::setw(10) << "F" << '\n';
    for (const auto& [metric, s] : mean) {
        out << std::left << std::setw(10) << metric.name() << std::right << std::setw(10) << s.precision
            << std::setw(10) << s.recall << std::setw(10) << s.f << '\n';
    }
    out << '\n' << std::left << std::setw(24) << "cluster";
    for (const auto& [metric, s] : mean) out << std::right << std::setw(12) << (metric.name() + " F");
    out << '\n';
    for (const auto& c : clusters) {
        out << std::left << std::setw(24) << c.id;
        for (const auto& [metric, s] : c.scores) out << std::right << std::setw(12) << s.f;
        out << '\n';
    }
    return out.str();
}

std::size_t cmd_decode(const RunConfig& cfg, std::ostream& err) {
    cfg.decode.validate();
    if (cfg.max_docs < 1) fail(ErrorKind::usage, "max-docs must be at least 1");
    if (cfg.max_tokens < 1) fail(ErrorKind::usage, "max-tokens must be at least 1");
    if (cfg.out_dir.empty()) fail(ErrorKind::usage, "an output directory is required");
    // Everything that can fail globally happens before any file is created.
    const SequenceModelHandle model = load_model(cfg.model_path, cfg.model_kind);
    const ClusterSet clusters = load_clusters(cfg.clusters_path);

    const fs::path trace_dir = cfg.out_dir / "traces";
    fs::create_directories(trace_dir);

    const std::size_t n = clusters.clusters.size();
    std::vector<std::optional<std::string>> records(n);
    std::vector<std::string> errors(n);
    ThreadPool pool(std::max<std::size_t>(cfg.jobs, 1));
    pool.parallel_for(n, [&](std::size_t i) {
        const Cluster& cluster = clusters.clusters[i];
        try {
            records[i] = decode_cluster(*model, cluster, i, cfg, trace_dir);
        } catch (const std::exception& e) {
            errors[i] = "cluster '" + cluster.id + "': " + error_message(e);
        }
    });

    std::string summaries;
    std::size_t failures = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (records[i]) {
            summaries += *records[i];
            summaries += '\n';
        } else {
            ++failures;
            err << errors[i] << '\n';
        }
    }
    write_file_atomic(cfg.out_dir / "summaries.jsonl", summaries);
    write_file_atomic(cfg.out_dir / "run_config.toml", cfg.to_toml());
    if (failures) err << failures << " of " << n << " clusters failed\n";
    return failures;
}

EvaluationReport cmd_evaluate(const fs::path& hypotheses_path, const fs::path& clusters_path,
                              const rouge::RougeConfig& cfg) {
    cfg.validate();
    const auto hypotheses = load_hypotheses(hypotheses_path);
    const ClusterSet clusters = load_clusters(clusters_path);
    if (hypotheses.empty()) fail(ErrorKind::usage, "no hypotheses in " + hypotheses_path.string());

    std::vector<std::string> missing;
    std::vector<rouge::ScoredPair> pairs;
    for (const auto& h : hypotheses) {
        const Cluster* c = clusters.find(h.id);
        if (!c || c->references.empty()) {
            missing.push_back(h.id);
            continue;
        }
        pairs.push_back({h.summary, c->references});
    }
    if (!missing.empty()) {
        std::string list;
        for (const auto& id : missing) list += (list.empty() ? "" : ", ") + id;
        fail(ErrorKind::input, "hypotheses without a cluster or references: " + list);
    }

    EvaluationReport report;
    report.mean = rouge::evaluate_corpus(pairs, cfg, kMetrics);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        ClusterMetrics cm{hypotheses[i].id, {}};
        for (const auto& m : kMetrics) cm.scores[m] = rouge::score(m, pairs[i].hypothesis, pairs[i].references, cfg);
        report.clusters.push_back(std::move(cm));
    }
    return report;
}

std::vector<SweepRow> cmd_sweep(const RunConfig& cfg, const std::vector<std::size_t>& sizes, std::ostream& err) {
    if (sizes.empty()) fail(ErrorKind::usage, "sweep needs at least one ensemble size");
    for (auto s : sizes) {
        if (s < 1) fail(ErrorKind::usage, "ensemble sizes must be at least 1");
    }
    std::vector<SweepRow> rows;
    for (auto s : sizes) {
        RunConfig run = cfg;
        run.max_docs = s;
        run.out_dir = cfg.out_dir / ("docs_" + std::to_string(s));
        SweepRow row;
        row.docs = s;
        row.failures = cmd_decode(run, err);
        row.report = cmd_evaluate(run.out_dir / "summaries.jsonl", cfg.clusters_path, cfg.rouge);
        write_file_atomic(run.out_dir / "metrics.json", row.report.to_json());
        rows.push_back(std::move(row));
    }

    std::ostringstream tsv;
    tsv << "docs\tfailed";
    for (const auto& m : kMetrics) tsv << '\t' << m.name() << "_p\t" << m.name() << "_r\t" << m.name() << "_f";
    tsv << '\n';
    for (const auto& row : rows) {
        tsv << row.docs << '\t' << row.failures;
        for (const auto& m : kMetrics) {
            const auto& s = row.report.mean.at(m);
            tsv << '\t' << format_double(s.precision) << '\t' << format_double(s.recall) << '\t' << format_double(s.f);
        }
        tsv << '\n';
    }
    write_file_atomic(cfg.out_dir / "sweep.tsv", tsv.str());
    return rows;
}

namespace {

std::size_t cmd_trace(const RunConfig& cfg, const fs::path& hypotheses_path, std::ostream& out, std::ostream& err) {
    if (cfg.out_dir.empty()) fail(ErrorKind::usage, "an output directory is required");
    const SequenceModelHandle model = load_model(cfg.model_path, cfg.model_kind);
    const ClusterSet clusters = load_clusters(cfg.clusters_path);
    const auto hypotheses = load_hypotheses(hypotheses_path);
    fs::create_directories(cfg.out_dir);

    std::size_t failures = 0;
    for (std::size_t i = 0; i < hypotheses.size(); ++i) {
        const auto& h = hypotheses[i];
        try {
            const Cluster* cluster = clusters.find(h.id);
            if (!cluster) fail(ErrorKind::input, "no cluster with this id");
            TokenSeq tokens;
            for (auto w : h.tokens.empty() ? std::vector<std::string>{} : h.tokens) {
                auto id = model->vocab().find(w);
                if (!id) fail(ErrorKind::input, "token '" + w + "' not in model vocabulary");
                tokens.push_back(*id);
            }
            if (h.tokens.empty()) {
                for (auto piece : split_whitespace(h.summary)) tokens.push_back(model->vocab().id_or_unk(piece));
                tokens.push_back(kEos);
            }
            const auto chosen = select_document_indices(*cluster, cfg.max_docs, cfg.decode.seed);
            std::vector<TokenSeq> inputs;
            DecodeContext ctx;
            for (auto d : chosen) {
                inputs.push_back(tokenize_and_truncate(cluster->documents[d], model->vocab(), cfg.max_tokens));
                ctx.input_labels.push_back("doc_" + std::to_string(d));
            }
            const auto scored = sequence_score(*model, inputs, tokens, cfg.decode.reduce, ctx);
            write_file_atomic(cfg.out_dir / trace_file_name(i, h.id, cfg.trace_format),
                              export_trace(scored.trace, cfg.trace_format));
            out << h.id << "\traw=" << format_double(scored.raw_score);
            const auto totals = input_totals(scored.trace);
            for (std::size_t j = 0; j < totals.size(); ++j) {
                out << '\t' << scored.trace.input_labels[j] << '=' << format_double(totals[j]);
            }
            out << '\n';
        } catch (const std::exception& e) {
            ++failures;
            err << "hypothesis '" << h.id << "': " << error_message(e) << '\n';
        }
    }
    return failures;
}

struct RougeFlags {
    std::string profile = "default";
    bool lowercase = true;
    bool strip_punct = false;
    bool stem = false;
    std::string multi_ref = "max";
    double beta = 1.0;
    CLI::Option* lowercase_opt = nullptr;
    CLI::Option* strip_opt = nullptr;
    CLI::Option* stem_opt = nullptr;
    CLI::Option* multi_opt = nullptr;
    CLI::Option* beta_opt = nullptr;

    void add(CLI::App* app) {
        app->add_option("--rouge-profile", profile, "ROUGE preset applied before the flags below")
            ->check(CLI::IsMember({"default", "normalized"}))
            ->capture_default_str();
        lowercase_opt = app->add_option("--lowercase", lowercase, "Lowercase before scoring")->capture_default_str();
        strip_opt = app->add_option("--strip-punct", strip_punct, "Replace non-alphanumerics with spaces")
                        ->capture_default_str();
        stem_opt = app->add_option("--stem", stem, "Porter-stem tokens")->capture_default_str();
        multi_opt = app->add_option("--multi-ref", multi_ref, "Combine references: best F or average")
                        ->check(CLI::IsMember({"max", "average"}))
                        ->capture_default_str();
        beta_opt = app->add_option("--beta", beta, "F-measure recall weight")->capture_default_str();
    }

    rouge::RougeConfig resolve() const {
        rouge::RougeConfig cfg = *rouge::profile(profile);
        if (lowercase_opt->count()) cfg.lowercase = lowercase;
        if (strip_opt->count()) cfg.strip_punctuation = strip_punct;
        if (stem_opt->count()) cfg.use_porter_stemming = stem;
        if (multi_opt->count()) cfg.multi_ref = multi_ref == "max" ? rouge::MultiRef::max_over_refs
                                                                   : rouge::MultiRef::average_over_refs;
        if (beta_opt->count()) cfg.beta = beta;
        cfg.validate();
        return cfg;
    }
};

struct DecodeFlags {
    RunConfig cfg;
    std::string reduce = "mean-logprob";
    std::string trace_format = "csv";
    int no_repeat_ngram = 0;
    std::string model_path, clusters_path, out_dir;

    void add(CLI::App* app, bool need_out_dir = true) {
        app->add_option("--model", model_path, "Model file")->required();
        app->add_option("--model-kind", cfg.model_kind, "Model kind")
            ->check(CLI::IsMember({"toy", "uniform"}))
            ->capture_default_str();
        app->add_option("--clusters", clusters_path, "Cluster file (JSON lines)")->required();
        auto* out = app->add_option("--out-dir", out_dir, "Output directory")->configurable(false);
        if (need_out_dir) out->required();
        app->add_option("--beam", cfg.decode.beam_size, "Beam size")->capture_default_str();
        app->add_option("--min-len", cfg.decode.min_len, "Minimum content tokens before EOS")->capture_default_str();
        app->add_option("--max-len", cfg.decode.max_len, "Maximum generated tokens including EOS")
            ->capture_default_str();
        app->add_option("--reduce", reduce, "Reduce function")
            ->check(CLI::IsMember({"mean-logprob", "mean-prob"}))
            ->capture_default_str();
        app->add_option("--alpha", cfg.decode.length_penalty_alpha, "Length penalty exponent")
            ->capture_default_str();
        app->add_option("--no-repeat-ngram", no_repeat_ngram, "Block repeated n-grams of this order (0 = off)")
            ->capture_default_str();
        app->add_option("--seed", cfg.decode.seed, "Seed for document selection")->capture_default_str();
        app->add_option("--max-docs", cfg.max_docs, "Documents per ensemble")->capture_default_str();
        app->add_option("--max-tokens", cfg.max_tokens, "Tokens kept per document")->capture_default_str();
        app->add_option("--trace-format", trace_format, "Trace file format")
            ->check(CLI::IsMember({"csv", "json"}))
            ->capture_default_str();
        app->add_option("--jobs", cfg.jobs, "Clusters decoded in parallel (not written to run_config)")
            ->capture_default_str();
    }

    RunConfig resolve(const rouge::RougeConfig& rouge_cfg) const {
        RunConfig out = cfg;
        out.model_path = model_path;
        out.clusters_path = clusters_path;
        out.out_dir = out_dir;
        out.decode.reduce = *parse_reduce_kind(reduce);
        out.trace_format = trace_format == "csv" ? TraceFormat::csv : TraceFormat::json;
        if (no_repeat_ngram > 0) out.decode.block_repeat_ngram = no_repeat_ngram;
        out.rouge = rouge_cfg;
        return out;
    }
};

// Unsectioned keys in a config file belong to whichever subcommand ran.
class SubcommandToml : public CLI::ConfigTOML {
public:
    explicit SubcommandToml(const CLI::App* root) : root_(root) {}

    std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
        auto items = CLI::ConfigTOML::from_config(input);
        const auto subs = root_->get_subcommands();
        if (subs.empty()) return items;
        for (auto& item : items) {
            if (item.parents.empty()) item.parents.push_back(subs.front()->get_name());
        }
        return items;
    }

private:
    const CLI::App* root_;
};

std::vector<std::size_t> parse_sizes(const std::string& text) {
    std::vector<std::size_t> sizes;
    std::string piece;
    std::istringstream in(text);
    while (std::getline(in, piece, ',')) {
        auto v = parse_u64(piece);
        if (!v || *v == 0) fail(ErrorKind::usage, "bad ensemble size '" + piece + "'");
        sizes.push_back(static_cast<std::size_t>(*v));
    }
    return sizes;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Ensemble beam-search decoding over multiple inputs with provenance traces and ROUGE scoring"};
    app.require_subcommand(1);
    // Subcommands pass --config up to the root app, which owns the config file.
    app.fallthrough();
    app.set_config("--config", "", "TOML file with defaults for the subcommand's options (flags override)");
    app.config_formatter(std::make_shared<SubcommandToml>(&app));

    DecodeFlags decode_flags;
    RougeFlags decode_rouge;
    auto* decode = app.add_subcommand("decode", "Decode every cluster into summaries and trace files");
    decode_flags.add(decode);
    decode_rouge.add(decode);

    std::string eval_hyps, eval_clusters, eval_report;
    RougeFlags eval_rouge;
    auto* evaluate = app.add_subcommand("evaluate", "Score summaries against cluster references with ROUGE");
    evaluate->add_option("--hypotheses", eval_hyps, "Summaries file written by decode")->required();
    evaluate->add_option("--clusters", eval_clusters, "Cluster file with references")->required();
    evaluate->add_option("--report", eval_report, "Write the JSON report here")->configurable(false);
    eval_rouge.add(evaluate);

    DecodeFlags sweep_flags;
    RougeFlags sweep_rouge;
    std::string sweep_sizes = "1,2,5";
    auto* sweep = app.add_subcommand("sweep", "Decode and evaluate for several ensemble sizes");
    sweep_flags.add(sweep);
    sweep_rouge.add(sweep);
    sweep->add_option("--sizes", sweep_sizes, "Comma-separated documents-per-ensemble values")
        ->capture_default_str();

    DecodeFlags trace_flags;
    RougeFlags trace_rouge;
    std::string trace_hyps;
    auto* trace = app.add_subcommand("trace", "Rescore summaries and export per-input trace matrices");
    trace_flags.add(trace);
    trace_rouge.add(trace);
    trace->add_option("--hypotheses", trace_hyps, "Summaries file written by decode")->required();

    std::string synth_dir;
    ConsensusCorpusOptions synth_opts;
    auto* synth = app.add_subcommand("synth", "Write a generated consensus corpus and its copy model");
    synth->add_option("--out-dir", synth_dir, "Output directory")->required();
    synth->add_option("--num-clusters", synth_opts.clusters, "Number of clusters")->capture_default_str();
    synth->add_option("--seed", synth_opts.seed, "Generator seed")->capture_default_str();

    for (auto* sub : {decode, evaluate, sweep, trace}) {
        sub->footer("Option defaults can be read from a TOML file with --config FILE; keys are the long flag "
                    "names without the leading dashes, e.g. min-len = 2. A decode run writes a reusable run_config.toml.");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        if (*decode) {
            const auto cfg = decode_flags.resolve(decode_rouge.resolve());
            return cmd_decode(cfg, err) ? 1 : 0;
        }
        if (*evaluate) {
            const auto report = cmd_evaluate(eval_hyps, eval_clusters, eval_rouge.resolve());
            out << report.to_text();
            if (!eval_report.empty()) write_file_atomic(eval_report, report.to_json());
            return 0;
        }
        if (*sweep) {
            const auto cfg = sweep_flags.resolve(sweep_rouge.resolve());
            const auto rows = cmd_sweep(cfg, parse_sizes(sweep_sizes), err);
            out << read_file(cfg.out_dir / "sweep.tsv");
            const bool failed = std::any_of(rows.begin(), rows.end(), [](const SweepRow& r) { return r.failures; });
            return failed ? 1 : 0;
        }
        if (*trace) {
            const auto cfg = trace_flags.resolve(trace_rouge.resolve());
            return cmd_trace(cfg, trace_hyps, out, err) ? 1 : 0;
        }
        if (*synth) {
            const auto corpus = make_consensus_corpus(synth_opts);
            fs::create_directories(synth_dir);
            save_clusters(corpus.clusters, fs::path(synth_dir) / "clusters.jsonl");
            save_toy_spec(corpus.model, fs::path(synth_dir) / "model.txt");
            out << "wrote " << corpus.clusters.clusters.size() << " clusters; decode with --min-len "
                << corpus.params.min_len << " --max-len " << corpus.params.max_len
                << " --no-repeat-ngram 1 --max-docs 5\n";
            return 0;
        }
    } catch (const std::exception& e) {
        err << "dyne: " << error_message(e) << '\n';
        return 2;
    }
    return 0;
}

}  // namespace dyne::cli
