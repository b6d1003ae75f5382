#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace enercast {

// Timestamps are UTC milliseconds since the Unix epoch throughout.

// Accepts ISO-8601 ("2020-06-01T10:00:29Z", optional fractional seconds,
// optional trailing Z) or a plain integer of epoch milliseconds.
std::optional<std::int64_t> parse_timestamp_ms(std::string_view text);

// "2020-06-01T10:00:29Z"; the millisecond variant appends ".029".
std::string format_iso8601_seconds(std::int64_t ms);
std::string format_iso8601_ms(std::int64_t ms);

// Nearest-minute rounding, half up: seconds >= 30 round to the next minute.
std::int64_t round_to_minute(std::int64_t ms);

constexpr std::int64_t kMillisPerMinute = 60'000;

}  // namespace enercast
