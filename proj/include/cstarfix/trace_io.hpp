#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "cstarfix/contraction.hpp"
#include "cstarfix/solvers.hpp"

namespace cstarfix {

enum class TraceFormat { Jsonl, Csv };

const char* to_string(TraceFormat format) noexcept;

/// One serialized cell. `quoted` marks textual content that needs JSON string
/// quoting; unquoted cells carry a ready JSON fragment (number, array, bool).
struct FieldValue {
    bool quoted = false;
    std::string text;
};

/// An ordered subset of the schema columns for one output line.
using Record = std::vector<std::pair<std::string, FieldValue>>;

/// The full column schema shared by every record kind, in emission order. CSV
/// files carry all of these in the header; jsonl objects keep only the fields
/// a record actually sets.
const std::vector<std::string>& trace_columns();

/// Streams records to one sink. Construction writes the CSV header when the
/// format asks for one; every write emits exactly one line. Numbers are
/// preformatted with 17 significant digits upstream, so identical record
/// sequences serialize to identical bytes.
class TraceWriter {
public:
    TraceWriter(std::ostream& out, TraceFormat format);
    void write(const Record& record);

private:
    std::ostream& out_;
    TraceFormat format_;
};

// Cell helpers. format_double uses %.17g for bit-faithful round trips.
[[nodiscard]] std::string format_double(double value);
[[nodiscard]] FieldValue number_field(double value);
[[nodiscard]] FieldValue integer_field(std::uint64_t value);
[[nodiscard]] FieldValue bool_field(bool value);
[[nodiscard]] FieldValue text_field(std::string text);
/// Finite points serialize as their label, scalars as a number, higher
/// dimensions as a JSON array of coordinates.
[[nodiscard]] FieldValue point_field(const Point& p, const MetricSpaceInstance& space);
/// Ascending eigenvalue list as a JSON array.
[[nodiscard]] FieldValue spectrum_field(const AlgebraElement& a);

// Record builders: one record per event plus one trailing summary record.
[[nodiscard]] std::vector<Record> records_from(const SolveResult& result,
                                               const MetricSpaceInstance& space,
                                               std::uint64_t seed);
[[nodiscard]] std::vector<Record> records_from(const Certificate& certificate,
                                               const MetricSpaceInstance& space,
                                               std::uint64_t seed);
[[nodiscard]] std::vector<Record> records_from(const AxiomReport& report,
                                               const MetricSpaceInstance& space,
                                               std::uint64_t seed);

}  // namespace cstarfix
