#pragma once

#include <chrono>
#include <compare>
#include <string>
#include <string_view>

namespace mediacube {

/// A calendar day, serialized as ISO 8601 "YYYY-MM-DD".
class Date {
 public:
  Date() = default;
  /// Throws Error(MalformedValue) if the triple is not a real calendar day.
  Date(int year, unsigned month, unsigned day);
  explicit Date(std::chrono::sys_days days) : days_(days) {}

  std::chrono::sys_days days() const noexcept { return days_; }
  std::chrono::year_month_day ymd() const noexcept { return std::chrono::year_month_day{days_}; }

  friend auto operator<=>(const Date&, const Date&) = default;

 private:
  std::chrono::sys_days days_{};
};

/// A UTC instant at second precision, serialized as "YYYY-MM-DDThh:mm:ssZ".
using Instant = std::chrono::sys_seconds;

enum class Granularity { Day, Month, Year };

/// Strict "YYYY-MM-DD"; throws Error(MalformedValue).
Date parse_date(std::string_view text);
std::string format_date(const Date& d);

/// Strict "YYYY-MM-DDThh:mm:ssZ"; throws Error(MalformedValue).
Instant parse_instant(std::string_view text);
std::string format_instant(Instant t);

Date day_of(Instant t) noexcept;
Instant start_of(const Date& d) noexcept;

/// "2024-01-02", "2024-01" or "2024". Lexicographic order of buckets is
/// chronological order.
std::string time_bucket(Instant t, Granularity g);

std::string_view granularity_name(Granularity g) noexcept;
/// Accepts "day", "month", "year"; throws Error(MalformedValue).
Granularity parse_granularity(std::string_view text);

}  // namespace mediacube
