#include "dyne/provenance.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

#include "dyne/error.hpp"
#include "dyne/text_util.hpp"

namespace dyne {

namespace {

using nlohmann::json;

std::string csv_field(std::string_view s) {
    if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::vector<std::string> split_csv_line(std::string_view line, std::size_t line_no) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (quoted) fail(ErrorKind::format, "trace CSV line " + std::to_string(line_no) + ": unterminated quote");
    fields.push_back(std::move(cur));
    return fields;
}

json number_to_json(double v) {
    if (std::isfinite(v)) return v;
    return format_double(v);
}

double number_from_json(const json& j) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        if (auto v = parse_double(j.get<std::string>()); v && !std::isfinite(*v)) return *v;
    }
    fail(ErrorKind::format, "trace JSON: expected a number, got " + j.dump());
}

double csv_number(const std::string& s, std::size_t line_no) {
    auto v = parse_double(s);
    if (!v) fail(ErrorKind::format, "trace CSV line " + std::to_string(line_no) + ": bad number '" + s + "'");
    return *v;
}

}  // namespace

void record_step(TraceMatrix& trace, TokenId token, std::string text, double combined,
                 std::vector<double> per_input) {
    if (per_input.size() != trace.width()) {
        fail(ErrorKind::shape, "trace row has " + std::to_string(per_input.size()) + " cells, expected " +
                                   std::to_string(trace.width()));
    }
    trace.rows.push_back(TraceRow{token, std::move(text), combined, std::move(per_input)});
}

std::vector<double> input_totals(const TraceMatrix& trace) {
    if (trace.rows.empty()) fail(ErrorKind::usage, "input_totals of an empty trace");
    std::vector<double> totals(trace.width(), 0.0);
    for (const auto& row : trace.rows) {
        for (std::size_t i = 0; i < totals.size(); ++i) totals[i] += row.per_input[i];
    }
    return totals;
}

double combined_total(const TraceMatrix& trace) {
    double total = 0.0;
    for (const auto& row : trace.rows) total += row.combined;
    return total;
}

double max_reduce_residual(const TraceMatrix& trace, ReduceKind kind) {
    double worst = 0.0;
    for (const auto& row : trace.rows) {
        const double expected = reduce_values(kind, row.per_input);
        if (expected == row.combined) continue;
        const double diff = std::abs(expected - row.combined);
        worst = std::isnan(diff) ? diff : std::max(worst, diff);
    }
    return worst;
}

std::string export_trace(const TraceMatrix& trace, TraceFormat format) {
    if (format == TraceFormat::csv) {
        std::ostringstream out;
        out << "timestep,token,combined";
        for (const auto& label : trace.input_labels) out << ',' << csv_field(label);
        out << '\n';
        for (std::size_t t = 0; t < trace.rows.size(); ++t) {
            const auto& row = trace.rows[t];
            out << t << ',' << csv_field(row.text) << ',' << format_double_sci(row.combined);
            for (double v : row.per_input) out << ',' << format_double_sci(v);
            out << '\n';
        }
        return out.str();
    }

    json rows = json::array();
    for (std::size_t t = 0; t < trace.rows.size(); ++t) {
        const auto& row = trace.rows[t];
        json cells = json::array();
        for (double v : row.per_input) cells.push_back(number_to_json(v));
        rows.push_back({{"timestep", t},
                        {"token_id", row.token},
                        {"token", row.text},
                        {"combined", number_to_json(row.combined)},
                        {"per_input", std::move(cells)}});
    }
    json doc = {{"input_labels", trace.input_labels}, {"rows", std::move(rows)}};
    return doc.dump(2) + "\n";
}

TraceMatrix parse_trace_csv(std::string_view text, const Vocab& vocab) {
    TraceMatrix trace;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    bool header = true;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto fields = split_csv_line(line, line_no);
        if (header) {
            if (fields.size() < 3 || fields[0] != "timestep" || fields[1] != "token" || fields[2] != "combined") {
                fail(ErrorKind::format, "trace CSV: header must start with timestep,token,combined");
            }
            trace.input_labels.assign(fields.begin() + 3, fields.end());
            header = false;
            continue;
        }
        if (fields.size() != trace.width() + 3) {
            fail(ErrorKind::format, "trace CSV line " + std::to_string(line_no) + ": expected " +
                                        std::to_string(trace.width() + 3) + " fields");
        }
        if (fields[0] != std::to_string(trace.rows.size())) {
            fail(ErrorKind::format, "trace CSV line " + std::to_string(line_no) + ": timestep out of sequence");
        }
        auto id = vocab.find(fields[1]);
        if (!id) fail(ErrorKind::format, "trace CSV line " + std::to_string(line_no) + ": unknown token '" + fields[1] + "'");
        std::vector<double> cells;
        for (std::size_t i = 3; i < fields.size(); ++i) cells.push_back(csv_number(fields[i], line_no));
        record_step(trace, *id, fields[1], csv_number(fields[2], line_no), std::move(cells));
    }
    if (header) fail(ErrorKind::format, "trace CSV: missing header");
    return trace;
}

TraceMatrix parse_trace_json(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        fail(ErrorKind::format, std::string("trace JSON: ") + e.what());
    }
    try {
        TraceMatrix trace;
        trace.input_labels = doc.at("input_labels").get<std::vector<std::string>>();
        for (const auto& r : doc.at("rows")) {
            if (r.at("timestep").get<std::size_t>() != trace.rows.size()) {
                fail(ErrorKind::format, "trace JSON: timestep out of sequence");
            }
            std::vector<double> cells;
            for (const auto& c : r.at("per_input")) cells.push_back(number_from_json(c));
            record_step(trace, r.at("token_id").get<TokenId>(), r.at("token").get<std::string>(),
                        number_from_json(r.at("combined")), std::move(cells));
        }
        return trace;
    } catch (const json::exception& e) {
        fail(ErrorKind::format, std::string("trace JSON: ") + e.what());
    }
}

}  // namespace dyne
