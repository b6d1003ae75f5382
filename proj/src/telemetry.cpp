#include "enercast/telemetry.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "enercast/error.hpp"

namespace enercast {

namespace {

std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return fields;
}

std::string_view trim(std::string_view text) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t' || text.front() == '\r')) {
    text.remove_prefix(1);
  }
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r')) {
    text.remove_suffix(1);
  }
  return text;
}

std::optional<double> parse_finite_value(std::string_view text) {
  text = trim(text);
  if (text.empty()) return std::nullopt;
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
  if (!std::isfinite(value)) return std::nullopt;
  return value;
}

void append_double(std::string& out, double value) {
  char buffer[32];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  (void)ec;
  out.append(buffer, ptr);
}

bool parse_csv_record(std::string_view line, TelemetryRecord& record, std::string& why) {
  const auto fields = split_csv(line);
  if (fields.size() != 4) {
    why = "expected 4 fields ts,device,key,value";
    return false;
  }
  const auto ts = parse_timestamp_ms(trim(fields[0]));
  if (!ts) {
    why = "bad timestamp '" + std::string(trim(fields[0])) + "'";
    return false;
  }
  const auto variable = variable_from_name(trim(fields[2]));
  if (!variable) {
    why = "unknown variable key '" + std::string(trim(fields[2])) + "'";
    return false;
  }
  const auto value = parse_finite_value(fields[3]);
  if (!value) {
    why = "non-numeric or non-finite value '" + std::string(trim(fields[3])) + "'";
    return false;
  }
  record.ts_ms = *ts;
  record.source = std::string(trim(fields[1]));
  record.variable = *variable;
  record.value = *value;
  return true;
}

bool parse_ndjson_record(std::string_view line, TelemetryRecord& record, std::string& why) {
  nlohmann::json object = nlohmann::json::parse(line, nullptr, false);
  if (object.is_discarded() || !object.is_object()) {
    why = "invalid JSON object";
    return false;
  }
  if (!object.contains("ts") || !object.contains("key") || !object.contains("value")) {
    why = "missing ts/key/value";
    return false;
  }
  std::optional<std::int64_t> ts;
  if (object["ts"].is_number_integer()) {
    ts = object["ts"].get<std::int64_t>();
  } else if (object["ts"].is_string()) {
    ts = parse_timestamp_ms(object["ts"].get<std::string>());
  }
  if (!ts) {
    why = "bad timestamp";
    return false;
  }
  const auto variable =
      object["key"].is_string() ? variable_from_name(object["key"].get<std::string>()) : std::nullopt;
  if (!variable) {
    why = "unknown variable key";
    return false;
  }
  if (!object["value"].is_number()) {
    why = "non-numeric value";
    return false;
  }
  const double value = object["value"].get<double>();
  if (!std::isfinite(value)) {
    why = "non-finite value";
    return false;
  }
  record.ts_ms = *ts;
  record.source = object.value("device", std::string{});
  record.variable = *variable;
  record.value = value;
  return true;
}

}  // namespace

const char* variable_name(Variable v) {
  switch (v) {
    case Variable::temperature:
      return "temperature";
    case Variable::humidity:
      return "humidity";
    case Variable::light:
      return "light";
    case Variable::power:
      return "power";
  }
  return "?";
}

std::optional<Variable> variable_from_name(std::string_view name) {
  for (Variable v : kAllVariables) {
    if (name == variable_name(v)) return v;
  }
  return std::nullopt;
}

ParseResult parse_telemetry(std::istream& input, TelemetryFormat format) {
  ParseResult result;
  std::string line;
  std::size_t line_number = 0;
  bool saw_data_line = false;

  if (format == TelemetryFormat::csv) {
    if (!std::getline(input, line)) fail(ErrorKind::EmptyInput, "telemetry input is empty");
    ++line_number;
    if (trim(line) != "ts,device,key,value") {
      fail(ErrorKind::MalformedLine, "line 1: expected header 'ts,device,key,value'");
    }
  }

  while (std::getline(input, line)) {
    ++line_number;
    const std::string_view content = trim(line);
    if (content.empty()) continue;
    saw_data_line = true;

    TelemetryRecord record;
    std::string why;
    const bool parsed = format == TelemetryFormat::csv
                            ? parse_csv_record(content, record, why)
                            : parse_ndjson_record(content, record, why);
    if (parsed) {
      result.records.push_back(std::move(record));
    } else {
      result.issues.push_back({line_number, "line " + std::to_string(line_number) + ": " + why});
    }
  }

  if (!saw_data_line) fail(ErrorKind::EmptyInput, "telemetry input has no data lines");
  return result;
}

AggregateMap aggregate_duplicates(std::span<const TelemetryRecord> records) {
  AggregateMap aggregated;
  for (const auto& record : records) {
    const std::int64_t minute = round_to_minute(record.ts_ms);
    auto& slot = aggregated[minute];
    const auto idx = static_cast<std::size_t>(record.variable);
    slot.sum[idx] += record.value;
    slot.count[idx] += 1;
  }
  return aggregated;
}

std::pair<AlignedFrame, DropReport> merge_and_drop(const AggregateMap& aggregated) {
  AlignedFrame frame;
  DropReport report;
  for (const auto& [minute, acc] : aggregated) {
    bool complete = true;
    for (std::size_t v = 0; v < kVariableCount; ++v) {
      if (acc.count[v] == 0) complete = false;
    }
    if (!complete) {
      ++report.dropped_minutes;
      for (std::size_t v = 0; v < kVariableCount; ++v) {
        if (acc.count[v] == 0) ++report.missing_by_variable[v];
      }
      continue;
    }
    frame.minutes.push_back(minute);
    for (std::size_t v = 0; v < kVariableCount; ++v) {
      frame.columns[v].push_back(acc.sum[v] / static_cast<double>(acc.count[v]));
    }
  }
  report.kept_rows = frame.size();
  if (frame.size() == 0) {
    fail(ErrorKind::EmptyFrame, "no minute has all four variables present");
  }
  return {std::move(frame), report};
}

IngestResult ingest_stream(std::istream& input, TelemetryFormat format) {
  ParseResult parsed = parse_telemetry(input, format);
  const AggregateMap aggregated = aggregate_duplicates(parsed.records);
  auto [frame, drops] = merge_and_drop(aggregated);
  return {std::move(frame), drops, std::move(parsed.issues), parsed.records.size()};
}

void write_frame_csv(std::ostream& out, const AlignedFrame& frame) {
  std::string buffer = "minute,temperature,humidity,light,power\n";
  for (std::size_t i = 0; i < frame.size(); ++i) {
    buffer += format_iso8601_seconds(frame.minutes[i]);
    for (std::size_t v = 0; v < kVariableCount; ++v) {
      buffer += ',';
      append_double(buffer, frame.columns[v][i]);
    }
    buffer += '\n';
  }
  out << buffer;
}

AlignedFrame read_frame_csv(std::istream& in) {
  AlignedFrame frame;
  std::string line;
  if (!std::getline(in, line) || trim(line) != "minute,temperature,humidity,light,power") {
    fail(ErrorKind::MalformedLine, "frame CSV: bad or missing header");
  }
  std::size_t line_number = 1;
  while (std::getline(in, line)) {
    ++line_number;
    const std::string_view content = trim(line);
    if (content.empty()) continue;
    const auto fields = split_csv(content);
    if (fields.size() != kVariableCount + 1) {
      fail(ErrorKind::MalformedLine,
           "frame CSV line " + std::to_string(line_number) + ": expected 5 fields");
    }
    const auto minute = parse_timestamp_ms(fields[0]);
    if (!minute) {
      fail(ErrorKind::MalformedLine,
           "frame CSV line " + std::to_string(line_number) + ": bad minute");
    }
    if (!frame.minutes.empty() && *minute <= frame.minutes.back()) {
      fail(ErrorKind::MalformedLine,
           "frame CSV line " + std::to_string(line_number) + ": minutes not strictly increasing");
    }
    frame.minutes.push_back(*minute);
    for (std::size_t v = 0; v < kVariableCount; ++v) {
      const auto value = parse_finite_value(fields[v + 1]);
      if (!value) {
        fail(ErrorKind::MalformedLine,
             "frame CSV line " + std::to_string(line_number) + ": bad value");
      }
      frame.columns[v].push_back(*value);
    }
  }
  if (frame.size() == 0) fail(ErrorKind::EmptyFrame, "frame CSV has no rows");
  return frame;
}

}  // namespace enercast
