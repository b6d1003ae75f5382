#include "enercast/timeutil.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>

namespace enercast {

namespace {

// Days since 1970-01-01 for a civil date (proleptic Gregorian).
std::int64_t days_from_civil(int year, unsigned month, unsigned day) {
  year -= month <= 2;
  const std::int64_t era = (year >= 0 ? year : year - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(year - era * 400);
  const unsigned doy = (153 * (month + (month > 2 ? -3 : 9)) + 2) / 5 + day - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, int& year, unsigned& month, unsigned& day) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  day = doy - (153 * mp + 2) / 5 + 1;
  month = mp + (mp < 10 ? 3 : -9);
  year = static_cast<int>(y + (month <= 2));
}

bool parse_fixed_uint(std::string_view text, std::size_t pos, std::size_t len, int& out) {
  if (pos + len > text.size()) return false;
  int value = 0;
  for (std::size_t i = 0; i < len; ++i) {
    const char c = text[pos + i];
    if (c < '0' || c > '9') return false;
    value = value * 10 + (c - '0');
  }
  out = value;
  return true;
}

}  // namespace

std::optional<std::int64_t> parse_timestamp_ms(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) return std::nullopt;

  // Integer epoch milliseconds.
  {
    std::int64_t value = 0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec == std::errc() && ptr == last) return value;
  }

  // ISO-8601: YYYY-MM-DD[T ]HH:MM:SS[.fff][Z]
  int year, month, day, hour, minute, second;
  if (!parse_fixed_uint(text, 0, 4, year)) return std::nullopt;
  if (text.size() < 19 || text[4] != '-' || text[7] != '-') return std::nullopt;
  if (text[10] != 'T' && text[10] != ' ') return std::nullopt;
  if (text[13] != ':' || text[16] != ':') return std::nullopt;
  if (!parse_fixed_uint(text, 5, 2, month) || !parse_fixed_uint(text, 8, 2, day) ||
      !parse_fixed_uint(text, 11, 2, hour) || !parse_fixed_uint(text, 14, 2, minute) ||
      !parse_fixed_uint(text, 17, 2, second)) {
    return std::nullopt;
  }
  if (month < 1 || month > 12 || day < 1 || day > 31) return std::nullopt;
  if (hour > 23 || minute > 59 || second > 60) return std::nullopt;

  std::size_t pos = 19;
  std::int64_t millis = 0;
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    std::size_t digits = 0;
    std::int64_t frac = 0;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
      if (digits < 3) frac = frac * 10 + (text[pos] - '0');
      ++digits;
      ++pos;
    }
    if (digits == 0) return std::nullopt;
    while (digits < 3) {
      frac *= 10;
      ++digits;
    }
    millis = frac;
  }
  if (pos < text.size() && (text[pos] == 'Z' || text[pos] == 'z')) ++pos;
  if (pos != text.size()) return std::nullopt;

  const std::int64_t days = days_from_civil(year, static_cast<unsigned>(month), static_cast<unsigned>(day));
  return ((days * 24 + hour) * 60 + minute) * 60'000LL + second * 1000LL + millis;
}

std::string format_iso8601_seconds(std::int64_t ms) {
  std::int64_t total_seconds = ms / 1000;
  if (ms % 1000 != 0 && ms < 0) --total_seconds;
  std::int64_t days = total_seconds / 86400;
  std::int64_t sod = total_seconds % 86400;
  if (sod < 0) {
    sod += 86400;
    --days;
  }
  int year;
  unsigned month, day;
  civil_from_days(days, year, month, day);
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%04d-%02u-%02uT%02d:%02d:%02dZ", year, month, day,
                static_cast<int>(sod / 3600), static_cast<int>((sod % 3600) / 60),
                static_cast<int>(sod % 60));
  return buffer;
}

std::string format_iso8601_ms(std::int64_t ms) {
  std::int64_t rem = ms % 1000;
  if (rem < 0) rem += 1000;
  std::string base = format_iso8601_seconds(ms - rem);
  base.pop_back();  // strip 'Z'
  char frac[8];
  std::snprintf(frac, sizeof(frac), ".%03dZ", static_cast<int>(rem));
  return base + frac;
}

std::int64_t round_to_minute(std::int64_t ms) {
  const std::int64_t shifted = ms + kMillisPerMinute / 2;
  std::int64_t quotient = shifted / kMillisPerMinute;
  if (shifted % kMillisPerMinute < 0) --quotient;
  return quotient * kMillisPerMinute;
}

}  // namespace enercast
