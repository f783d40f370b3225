#include "mediacube/calendar.hpp"

#include <cstdio>
#include <optional>

#include "mediacube/error.hpp"

namespace mediacube {

namespace chr = std::chrono;

namespace {

std::optional<unsigned> digits(std::string_view text, std::size_t pos, std::size_t count) {
  if (pos + count > text.size()) return std::nullopt;
  unsigned value = 0;
  for (std::size_t i = pos; i < pos + count; ++i) {
    char c = text[i];
    if (c < '0' || c > '9') return std::nullopt;
    value = value * 10 + static_cast<unsigned>(c - '0');
  }
  return value;
}

[[noreturn]] void malformed(std::string_view what, std::string_view text) {
  throw Error(ErrorCode::MalformedValue,
              "expected " + std::string(what) + ", got '" + std::string(text) + "'");
}

std::optional<Date> try_date_prefix(std::string_view text) {
  if (text.size() < 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
  auto y = digits(text, 0, 4);
  auto m = digits(text, 5, 2);
  auto d = digits(text, 8, 2);
  if (!y || !m || !d || *y == 0) return std::nullopt;
  chr::year_month_day ymd{chr::year{static_cast<int>(*y)}, chr::month{*m}, chr::day{*d}};
  if (!ymd.ok()) return std::nullopt;
  return Date(chr::sys_days{ymd});
}

}  // namespace

Date::Date(int year, unsigned month, unsigned day) {
  chr::year_month_day ymd{chr::year{year}, chr::month{month}, chr::day{day}};
  if (!ymd.ok() || year < 1 || year > 9999)
    throw Error(ErrorCode::MalformedValue, "not a calendar date: " + std::to_string(year) + "-" +
                                               std::to_string(month) + "-" + std::to_string(day));
  days_ = chr::sys_days{ymd};
}

Date parse_date(std::string_view text) {
  auto d = text.size() == 10 ? try_date_prefix(text) : std::nullopt;
  if (!d) malformed("date YYYY-MM-DD", text);
  return *d;
}

std::string format_date(const Date& d) {
  auto ymd = d.ymd();
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
  return buf;
}

Instant parse_instant(std::string_view text) {
  constexpr std::string_view kWhat = "UTC instant YYYY-MM-DDThh:mm:ssZ";
  if (text.size() != 20 || text[10] != 'T' || text[13] != ':' || text[16] != ':' || text[19] != 'Z')
    malformed(kWhat, text);
  auto d = try_date_prefix(text);
  auto hh = digits(text, 11, 2);
  auto mm = digits(text, 14, 2);
  auto ss = digits(text, 17, 2);
  if (!d || !hh || !mm || !ss || *hh > 23 || *mm > 59 || *ss > 59) malformed(kWhat, text);
  return chr::time_point_cast<chr::seconds>(d->days()) + chr::hours{*hh} + chr::minutes{*mm} +
         chr::seconds{*ss};
}

std::string format_instant(Instant t) {
  auto day = chr::floor<chr::days>(t);
  chr::hh_mm_ss<chr::seconds> tod{t - day};
  char buf[16];
  std::snprintf(buf, sizeof buf, "T%02d:%02d:%02dZ", static_cast<int>(tod.hours().count()),
                static_cast<int>(tod.minutes().count()), static_cast<int>(tod.seconds().count()));
  return format_date(Date(day)) + buf;
}

Date day_of(Instant t) noexcept { return Date(chr::floor<chr::days>(t)); }

Instant start_of(const Date& d) noexcept { return chr::time_point_cast<chr::seconds>(d.days()); }

std::string time_bucket(Instant t, Granularity g) {
  std::string day = format_date(day_of(t));
  switch (g) {
    case Granularity::Day: return day;
    case Granularity::Month: return day.substr(0, 7);
    case Granularity::Year: return day.substr(0, 4);
  }
  return day;
}

std::string_view granularity_name(Granularity g) noexcept {
  switch (g) {
    case Granularity::Day: return "day";
    case Granularity::Month: return "month";
    case Granularity::Year: return "year";
  }
  return "day";
}

Granularity parse_granularity(std::string_view text) {
  for (Granularity g : {Granularity::Day, Granularity::Month, Granularity::Year})
    if (granularity_name(g) == text) return g;
  malformed("granularity day|month|year", text);
}

}  // namespace mediacube
