#include "cstarfix/trace_io.hpp"

#include <cmath>
#include <cstdio>

namespace cstarfix {

const char* to_string(TraceFormat format) noexcept {
    switch (format) {
        case TraceFormat::Jsonl: return "jsonl";
        case TraceFormat::Csv: return "csv";
    }
    return "?";
}

const std::vector<std::string>& trace_columns() {
    static const std::vector<std::string> columns = {
        "record",       "seed",         "index",        "point",        "point2",
        "axiom",        "step_norm",    "bound_check",  "verdict",      "lhs_spectrum",
        "rhs_spectrum", "status",       "fixed_point",  "residual",     "iterations",
        "empirical_rate", "pairs_tested", "vacuous_pairs", "exhaustive", "all_hold",
        "axiom_warning", "samples",     "count",        "detail"};
    return columns;
}

namespace {

std::string json_escape(const std::string& text) {
    std::string out;
    out.reserve(text.size() + 2);
    for (unsigned char c : text) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\b': out += "\\b"; break;
            case '\f': out += "\\f"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (c < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += static_cast<char>(c);
                }
        }
    }
    return out;
}

std::string csv_cell(const std::string& text) {
    if (text.find_first_of(",\"\n\r") == std::string::npos) return text;
    std::string out = "\"";
    for (char c : text) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string array_text(const std::vector<double>& values) {
    std::string out = "[";
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ',';
        out += format_double(values[i]);
    }
    out += ']';
    return out;
}

const FieldValue* find_field(const Record& record, const std::string& key) {
    for (const auto& [k, v] : record)
        if (k == key) return &v;
    return nullptr;
}

}  // namespace

TraceWriter::TraceWriter(std::ostream& out, TraceFormat format)
    : out_(out), format_(format) {
    if (format_ == TraceFormat::Csv) {
        const auto& columns = trace_columns();
        for (std::size_t i = 0; i < columns.size(); ++i) {
            if (i) out_ << ',';
            out_ << columns[i];
        }
        out_ << '\n';
    }
}

void TraceWriter::write(const Record& record) {
    if (format_ == TraceFormat::Jsonl) {
        out_ << '{';
        bool first = true;
        for (const auto& [key, value] : record) {
            if (!first) out_ << ',';
            first = false;
            out_ << '"' << key << "\":";
            if (value.quoted)
                out_ << '"' << json_escape(value.text) << '"';
            else
                out_ << value.text;
        }
        out_ << "}\n";
        return;
    }
    const auto& columns = trace_columns();
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (i) out_ << ',';
        if (const FieldValue* value = find_field(record, columns[i]))
            out_ << csv_cell(value->text);
    }
    out_ << '\n';
}

std::string format_double(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

FieldValue number_field(double value) {
    // JSON has no literal for non-finite numbers; ship those as text.
    if (!std::isfinite(value)) return {true, format_double(value)};
    return {false, format_double(value)};
}

FieldValue integer_field(std::uint64_t value) { return {false, std::to_string(value)}; }

FieldValue bool_field(bool value) { return {false, value ? "true" : "false"}; }

FieldValue text_field(std::string text) { return {true, std::move(text)}; }

FieldValue point_field(const Point& p, const MetricSpaceInstance& space) {
    if (p.is_finite_index())
        return {true, space.domain().finite_set().labels[static_cast<std::size_t>(p.index())]};
    const auto& coords = p.coords();
    if (coords.size() == 1) return number_field(coords[0]);
    return {false, array_text(coords)};
}

FieldValue spectrum_field(const AlgebraElement& a) { return {false, array_text(spectrum(a))}; }

// ---------------------------------------------------------------------------
// Record builders
// ---------------------------------------------------------------------------

namespace {

Record base_record(const char* kind, std::uint64_t seed) {
    return Record{{"record", {true, kind}}, {"seed", integer_field(seed)}};
}

}  // namespace

std::vector<Record> records_from(const SolveResult& result,
                                 const MetricSpaceInstance& space, std::uint64_t seed) {
    std::vector<Record> records;
    for (std::size_t i = 0; i < result.trace.points.size(); ++i) {
        Record rec = base_record("trace", seed);
        rec.emplace_back("index", integer_field(i));
        rec.emplace_back("point", point_field(result.trace.points[i], space));
        if (i >= 1 && i - 1 < result.trace.step_norms.size())
            rec.emplace_back("step_norm", number_field(result.trace.step_norms[i - 1]));
        // Envelope checks start at the second step, so the check for the step
        // arriving at point i sits at position i - 2.
        if (i >= 2 && i - 2 < result.bound_checks.size())
            rec.emplace_back("bound_check",
                             text_field(to_string(result.bound_checks[i - 2].verdict)));
        records.push_back(std::move(rec));
    }
    Record summary = base_record("summary", seed);
    summary.emplace_back("status", text_field(to_string(result.status)));
    if (result.exit_point)
        summary.emplace_back("point", point_field(*result.exit_point, space));
    if (result.fixed_point)
        summary.emplace_back("fixed_point", point_field(*result.fixed_point, space));
    summary.emplace_back("residual", number_field(result.residual));
    summary.emplace_back("iterations", integer_field(result.iterations));
    summary.emplace_back("empirical_rate", number_field(result.empirical_rate));
    records.push_back(std::move(summary));
    return records;
}

std::vector<Record> records_from(const Certificate& certificate,
                                 const MetricSpaceInstance& space, std::uint64_t seed) {
    std::vector<Record> records;
    auto emit = [&](const ConditionEvaluation& ev, const char* kind) {
        Record rec = base_record(kind, seed);
        rec.emplace_back("index", integer_field(ev.pair_index));
        rec.emplace_back("point", point_field(ev.x, space));
        rec.emplace_back("point2", point_field(ev.y, space));
        if (ev.order) rec.emplace_back("verdict", text_field(to_string(ev.order->verdict)));
        if (ev.lhs) rec.emplace_back("lhs_spectrum", spectrum_field(*ev.lhs));
        if (ev.rhs) rec.emplace_back("rhs_spectrum", spectrum_field(*ev.rhs));
        records.push_back(std::move(rec));
    };
    for (const ConditionEvaluation& ev : certificate.violations) emit(ev, "violation");
    for (const ConditionEvaluation& ev : certificate.ill_posed) emit(ev, "ill_posed");

    Record summary = base_record("summary", seed);
    summary.emplace_back("status", text_field(certificate.all_hold ? "pass" : "fail"));
    summary.emplace_back("pairs_tested", integer_field(certificate.pairs_tested));
    summary.emplace_back("vacuous_pairs", integer_field(certificate.vacuous_pairs));
    summary.emplace_back("exhaustive", bool_field(certificate.exhaustive));
    summary.emplace_back("all_hold", bool_field(certificate.all_hold));
    summary.emplace_back("axiom_warning", bool_field(certificate.axiom_warning));
    records.push_back(std::move(summary));
    return records;
}

std::vector<Record> records_from(const AxiomReport& report,
                                 const MetricSpaceInstance& space, std::uint64_t seed) {
    std::vector<Record> records;
    std::size_t index = 0;
    for (const ViolationWitness* witness : report.violations()) {
        Record rec = base_record("axiom_violation", seed);
        rec.emplace_back("index", integer_field(index++));
        rec.emplace_back("axiom", text_field(witness->axiom));
        if (!witness->points.empty())
            rec.emplace_back("point", point_field(witness->points[0], space));
        if (witness->points.size() >= 2)
            rec.emplace_back("point2", point_field(witness->points[1], space));
        if (!witness->values.empty())
            rec.emplace_back("lhs_spectrum", spectrum_field(witness->values[0]));
        if (witness->values.size() >= 2)
            rec.emplace_back("rhs_spectrum", spectrum_field(witness->values[1]));
        rec.emplace_back("detail", text_field(witness->detail));
        records.push_back(std::move(rec));
    }
    Record summary = base_record("summary", seed);
    summary.emplace_back("status", text_field(report.all_pass() ? "pass" : "fail"));
    summary.emplace_back("exhaustive", bool_field(report.exhaustive));
    summary.emplace_back("samples", integer_field(report.samples_tested));
    records.push_back(std::move(summary));
    return records;
}

}  // namespace cstarfix
