#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "enercast/timeutil.hpp"

namespace enercast {

enum class Variable : int { temperature = 0, humidity = 1, light = 2, power = 3 };

constexpr std::size_t kVariableCount = 4;

constexpr std::array<Variable, kVariableCount> kAllVariables = {
    Variable::temperature, Variable::humidity, Variable::light, Variable::power};

const char* variable_name(Variable v);
std::optional<Variable> variable_from_name(std::string_view name);

// One raw sensor reading. `value` is always finite; non-finite values are
// rejected at parse time.
struct TelemetryRecord {
  std::int64_t ts_ms = 0;
  std::string source;
  Variable variable = Variable::temperature;
  double value = 0.0;
};

enum class TelemetryFormat { csv, ndjson };

struct ParseIssue {
  std::size_t line = 0;  // 1-based, header included for CSV
  std::string message;
};

struct ParseResult {
  std::vector<TelemetryRecord> records;  // input order
  std::vector<ParseIssue> issues;
};

// Input schema: CSV with header `ts,device,key,value` or NDJSON objects
// with the same keys. Malformed lines are reported, not fatal; an input
// with no data lines at all raises EmptyInput.
ParseResult parse_telemetry(std::istream& input, TelemetryFormat format);

// Sum/count per (minute, variable); mean = sum / count.
struct MinuteAccumulator {
  std::array<double, kVariableCount> sum{};
  std::array<std::uint32_t, kVariableCount> count{};
};

using AggregateMap = std::map<std::int64_t, MinuteAccumulator>;

// Rounds each record to the minute and accumulates duplicates; the mean per
// (minute, variable) key is the retained value.
AggregateMap aggregate_duplicates(std::span<const TelemetryRecord> records);

// Minute-indexed table with one column per variable and no missing cells.
struct AlignedFrame {
  std::vector<std::int64_t> minutes;  // strictly increasing minute boundaries
  std::array<std::vector<double>, kVariableCount> columns;

  std::size_t size() const { return minutes.size(); }
  std::span<const double> column(Variable v) const {
    return columns[static_cast<std::size_t>(v)];
  }
  std::vector<double>& column(Variable v) { return columns[static_cast<std::size_t>(v)]; }
};

struct DropReport {
  std::size_t kept_rows = 0;
  std::size_t dropped_minutes = 0;
  // How often each variable was the one missing from an eliminated minute.
  std::array<std::size_t, kVariableCount> missing_by_variable{};
};

// Keeps only minutes where all four variables are present; minutes sorted
// ascending. Raises EmptyFrame when nothing survives.
std::pair<AlignedFrame, DropReport> merge_and_drop(const AggregateMap& aggregated);

struct IngestResult {
  AlignedFrame frame;
  DropReport drops;
  std::vector<ParseIssue> issues;
  std::size_t record_count = 0;
};

IngestResult ingest_stream(std::istream& input, TelemetryFormat format);

// Frame CSV: header `minute,temperature,humidity,light,power`, minute as
// ISO-8601 seconds, values in shortest round-trip form. Re-serialization of
// a parsed frame is byte-identical.
void write_frame_csv(std::ostream& out, const AlignedFrame& frame);
AlignedFrame read_frame_csv(std::istream& in);

}  // namespace enercast
