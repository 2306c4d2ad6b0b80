#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "cstarfix/catalog.hpp"
#include "cstarfix/solvers.hpp"
#include "cstarfix/trace_io.hpp"

using namespace cstarfix;

namespace {

// Minimal parsers for the two output syntaxes, used to compare the formats
// field by field. Strings come back unescaped; every other value verbatim.

std::string read_json_string(const std::string& line, std::size_t& i) {
    REQUIRE(line[i] == '"');
    ++i;
    std::string out;
    while (i < line.size() && line[i] != '"') {
        if (line[i] == '\\') {
            ++i;
            REQUIRE(i < line.size());
            switch (line[i]) {
                case 'n': out += '\n'; break;
                case 't': out += '\t'; break;
                case 'r': out += '\r'; break;
                case 'b': out += '\b'; break;
                case 'f': out += '\f'; break;
                case 'u': {
                    const int code = std::stoi(line.substr(i + 1, 4), nullptr, 16);
                    out += static_cast<char>(code);
                    i += 4;
                    break;
                }
                default: out += line[i];
            }
        } else {
            out += line[i];
        }
        ++i;
    }
    REQUIRE(i < line.size());
    ++i;  // closing quote
    return out;
}

std::map<std::string, std::string> parse_jsonl_line(const std::string& line) {
    std::map<std::string, std::string> out;
    REQUIRE(line.size() >= 2);
    REQUIRE(line.front() == '{');
    std::size_t i = 1;
    while (i < line.size() && line[i] != '}') {
        const std::string key = read_json_string(line, i);
        REQUIRE(line[i] == ':');
        ++i;
        std::string value;
        if (line[i] == '"') {
            value = read_json_string(line, i);
        } else if (line[i] == '[') {
            const std::size_t close = line.find(']', i);
            REQUIRE(close != std::string::npos);
            value = line.substr(i, close - i + 1);
            i = close + 1;
        } else {
            std::size_t end = i;
            while (end < line.size() && line[end] != ',' && line[end] != '}') ++end;
            value = line.substr(i, end - i);
            i = end;
        }
        out[key] = value;
        if (line[i] == ',') ++i;
    }
    return out;
}

std::vector<std::string> parse_csv_row(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cell += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cell += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            cells.push_back(std::move(cell));
            cell.clear();
        } else {
            cell += c;
        }
    }
    cells.push_back(std::move(cell));
    return cells;
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::size_t start = 0;
    while (start < text.size()) {
        const std::size_t end = text.find('\n', start);
        REQUIRE(end != std::string::npos);  // every line is newline-terminated
        lines.push_back(text.substr(start, end - start));
        start = end + 1;
    }
    return lines;
}

std::string render(const std::vector<Record>& records, TraceFormat format) {
    std::ostringstream out;
    TraceWriter writer(out, format);
    for (const Record& rec : records) writer.write(rec);
    return out.str();
}

/// Both formats must carry the same fields: an absent jsonl key corresponds
/// to an empty csv cell, every present value to identical serialized text.
void check_round_trip(const std::vector<Record>& records) {
    const auto jsonl_lines = split_lines(render(records, TraceFormat::Jsonl));
    const auto csv_lines = split_lines(render(records, TraceFormat::Csv));
    REQUIRE(jsonl_lines.size() == records.size());
    REQUIRE(csv_lines.size() == records.size() + 1);  // header row

    const auto& columns = trace_columns();
    const auto header = parse_csv_row(csv_lines[0]);
    REQUIRE(header.size() == columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) CHECK(header[c] == columns[c]);

    for (std::size_t r = 0; r < records.size(); ++r) {
        const auto object = parse_jsonl_line(jsonl_lines[r]);
        const auto row = parse_csv_row(csv_lines[r + 1]);
        REQUIRE(row.size() == columns.size());
        for (std::size_t c = 0; c < columns.size(); ++c) {
            CAPTURE(r);
            CAPTURE(columns[c]);
            const auto it = object.find(columns[c]);
            if (it == object.end())
                CHECK(row[c].empty());
            else
                CHECK(row[c] == it->second);
        }
        // No stray jsonl keys outside the schema.
        for (const auto& [key, value] : object)
            CHECK(std::find(columns.begin(), columns.end(), key) != columns.end());
    }
}

}  // namespace

TEST_CASE("doubles survive the 17-digit round trip") {
    for (double v : {1.0 / 3.0, 0.1, -12345.678901234567, 1e-300, 2.0, 0.0,
                     6.8416383669500647e-11, 1.9999999998631672}) {
        const std::string text = format_double(v);
        CHECK(std::strtod(text.c_str(), nullptr) == v);
    }
    CHECK(number_field(2.0).quoted == false);
    // JSON has no non-finite literals, so those become quoted text.
    CHECK(number_field(std::numeric_limits<double>::infinity()).quoted == true);
}

TEST_CASE("a three-point trace serializes to three records plus one summary") {
    const CatalogEntry entry = catalog_build("affine_scalar");
    const SolveResult run =
        picard_solve(entry.space, entry.t, entry.default_start, entry.spec,
                     StopRule{1e-10, 3});
    REQUIRE(run.trace.points.size() == 4);  // start plus three steps

    // Trim to a three-point prefix by re-running with a two-step budget.
    const SolveResult short_run =
        picard_solve(entry.space, entry.t, entry.default_start, entry.spec,
                     StopRule{1e-10, 2});
    REQUIRE(short_run.trace.points.size() == 3);
    const auto records = records_from(short_run, entry.space, 7);
    REQUIRE(records.size() == 4);
    const auto lines = split_lines(render(records, TraceFormat::Jsonl));
    REQUIRE(lines.size() == 4);
    for (int i = 0; i < 3; ++i)
        CHECK(parse_jsonl_line(lines[i]).at("record") == "trace");
    const auto summary = parse_jsonl_line(lines[3]);
    CHECK(summary.at("record") == "summary");
    CHECK(summary.at("status") == "MaxIterations");
    CHECK(summary.at("seed") == "7");
}

TEST_CASE("envelope verdicts ride along with the step that they judge") {
    const CatalogEntry entry = catalog_build("affine_scalar");
    const SolveResult run =
        picard_solve(entry.space, entry.t, entry.default_start, entry.spec);
    REQUIRE(run.status == SolveStatus::Converged);
    REQUIRE(run.bound_checks.size() >= 2);
    const auto records = records_from(run, entry.space, 1);
    const auto lines = split_lines(render(records, TraceFormat::Jsonl));

    const auto first = parse_jsonl_line(lines[0]);
    CHECK(first.find("step_norm") == first.end());
    CHECK(first.find("bound_check") == first.end());
    const auto second = parse_jsonl_line(lines[1]);
    CHECK(second.find("step_norm") != second.end());
    CHECK(second.find("bound_check") == second.end());  // checks start one later
    const auto third = parse_jsonl_line(lines[2]);
    CHECK(third.at("bound_check") == std::string(to_string(run.bound_checks[0].verdict)));
    CHECK(third.at("step_norm") == format_double(run.trace.step_norms[1]));
}

TEST_CASE("certificate violations inline both spectra") {
    const CatalogEntry entry = catalog_build("reich_halving");
    (void)verify_axioms(entry.space, 500, 3);
    const Certificate cert = certify(entry.spec, entry.t, entry.space, 300, 2);
    REQUIRE_FALSE(cert.all_hold);
    REQUIRE(cert.violations.size() >= 2);

    const auto records = records_from(cert, entry.space, 2);
    REQUIRE(records.size() == cert.violations.size() + cert.ill_posed.size() + 1);
    const auto lines = split_lines(render(records, TraceFormat::Jsonl));
    std::size_t violation_lines = 0;
    for (std::size_t i = 0; i + 1 < lines.size(); ++i) {
        const auto object = parse_jsonl_line(lines[i]);
        if (object.at("record") != "violation") continue;
        ++violation_lines;
        CHECK(object.count("lhs_spectrum") == 1);
        CHECK(object.count("rhs_spectrum") == 1);
        CHECK(object.at("lhs_spectrum").front() == '[');
        CHECK(object.at("verdict") == "Fails");
    }
    CHECK(violation_lines == cert.violations.size());
    const auto summary = parse_jsonl_line(lines.back());
    CHECK(summary.at("status") == "fail");
    CHECK(summary.at("all_hold") == "false");
}

TEST_CASE("axiom witnesses carry their points, values, and detail") {
    const CatalogEntry entry = catalog_build("paper_example_kannan");
    const AxiomReport report = verify_axioms(entry.space, 500, 9);
    REQUIRE_FALSE(report.all_pass());
    const auto records = records_from(report, entry.space, 9);
    const auto lines = split_lines(render(records, TraceFormat::Jsonl));

    const auto first = parse_jsonl_line(lines[0]);
    CHECK(first.at("record") == "axiom_violation");
    CHECK(first.at("axiom") == "identity");
    CHECK(first.at("point") == "3");
    CHECK(first.at("point2") == "3");
    CHECK(first.at("lhs_spectrum") == "[0,36]");
    CHECK_FALSE(first.at("detail").empty());
    const auto summary = parse_jsonl_line(lines.back());
    CHECK(summary.at("status") == "fail");
    CHECK(summary.at("samples") == std::to_string(report.samples_tested));
}

TEST_CASE("csv reimports equal jsonl field by field") {
    const CatalogEntry affine = catalog_build("affine_scalar");
    const SolveResult run =
        picard_solve(affine.space, affine.t, affine.default_start, affine.spec);
    check_round_trip(records_from(run, affine.space, 1));

    const CatalogEntry halving = catalog_build("reich_halving");
    (void)verify_axioms(halving.space, 500, 3);
    check_round_trip(records_from(certify(halving.spec, halving.t, halving.space, 300, 2),
                                  halving.space, 2));

    const CatalogEntry showcase = catalog_build("paper_example_kannan");
    check_round_trip(records_from(verify_axioms(showcase.space, 500, 9), showcase.space, 9));

    const CatalogEntry finite = catalog_build("finite_random_12");
    const SolveResult table_run =
        picard_solve(finite.space, finite.t, Point::finite(5), {}, StopRule{0.25, 60});
    check_round_trip(records_from(table_run, finite.space, 5));
}

TEST_CASE("csv quoting survives commas, quotes, and newlines") {
    Record rec{{"record", text_field("trace")},
               {"detail", text_field("a,b \"c\"\nnext")},
               {"lhs_spectrum", FieldValue{false, "[1,2]"}}};
    const auto csv_lines = split_lines(render({rec}, TraceFormat::Csv));
    // The embedded newline is quoted, so the payload still parses as one row
    // once the two physical lines are rejoined.
    REQUIRE(csv_lines.size() == 3);
    const auto row = parse_csv_row(csv_lines[1] + "\n" + csv_lines[2]);
    REQUIRE(row.size() == trace_columns().size());
    CHECK(row[0] == "trace");
    CHECK(row[trace_columns().size() - 1] == "a,b \"c\"\nnext");

    const auto object = parse_jsonl_line(split_lines(render({rec}, TraceFormat::Jsonl))[0]);
    CHECK(object.at("detail") == "a,b \"c\"\nnext");
    CHECK(object.at("lhs_spectrum") == "[1,2]");
}

TEST_CASE("identical records serialize to identical bytes") {
    const CatalogEntry entry = catalog_build("kannan_cubic");
    (void)verify_axioms(entry.space, 400, 5);
    const auto records = records_from(certify(entry.spec, entry.t, entry.space, 400, 5),
                                      entry.space, 5);
    CHECK(render(records, TraceFormat::Jsonl) == render(records, TraceFormat::Jsonl));
    CHECK(render(records, TraceFormat::Csv) == render(records, TraceFormat::Csv));
}
