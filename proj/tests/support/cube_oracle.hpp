#pragma once

// Brute-force reference for the usage cube: scan every event, keep those that
// satisfy each fixed dimension, group by the free dimensions in an ordered
// map. Deliberately shares nothing with the library's grouping code.

#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "mediacube/analytics.hpp"
#include "mediacube/catalog_store.hpp"

namespace mediacube::oracle {

inline std::string day_text(Instant t) {
  auto secs = t.time_since_epoch().count();
  long long days = secs >= 0 ? secs / 86400 : -((-secs + 86399) / 86400);
  // Civil-from-days (H. Hinnant's algorithm), written out independently.
  long long z = days + 719468;
  long long era = (z >= 0 ? z : z - 146096) / 146097;
  long long doe = z - era * 146097;
  long long yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  long long y = yoe + era * 400;
  long long doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  long long mp = (5 * doy + 2) / 153;
  long long d = doy - (153 * mp + 2) / 5 + 1;
  long long m = mp < 10 ? mp + 3 : mp - 9;
  if (m <= 2) ++y;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%04lld-%02lld-%02lld", y, m, d);
  return buf;
}

inline std::string bucket_text(Instant t, Granularity g) {
  std::string day = day_text(t);
  if (g == Granularity::Month) return day.substr(0, 7);
  if (g == Granularity::Year) return day.substr(0, 4);
  return day;
}

inline bool time_ok(const TimeFilter& f, Instant t) {
  if (std::holds_alternative<Date>(f)) return day_text(t) == format_date(std::get<Date>(f));
  const auto& r = std::get<TimeRange>(f);
  return t >= r.start && t < r.end;
}

inline CubeResult cube(const CatalogSnapshot& s, const CubeQuery& q) {
  const auto& f = q.fixed;
  std::map<std::vector<std::string>, std::vector<EventId>> groups;
  std::size_t total = 0;
  for (const auto& e : s.events) {
    bool keep = (!f.document || e.document_code.text() == f.document->text()) &&
                (!f.context || e.context == *f.context) && (!f.user || e.user_id == *f.user) &&
                (!f.time || time_ok(*f.time, e.timestamp));
    if (!keep) continue;
    std::vector<std::string> key;
    if (!f.document) key.push_back(e.document_code.text());
    if (!f.context) key.push_back(e.context);
    if (!f.user) key.push_back(e.user_id);
    if (!f.time) key.push_back(bucket_text(e.timestamp, q.granularity));
    groups[key].push_back(e.event_id);
    ++total;
  }

  CubeResult r;
  r.pattern = 1 + (f.document ? 8 : 0) + (f.context ? 4 : 0) + (f.user ? 2 : 0) + (f.time ? 1 : 0);
  r.granularity = q.granularity;
  if (!f.document) r.free_dimensions.push_back(Dimension::Document);
  if (!f.context) r.free_dimensions.push_back(Dimension::Context);
  if (!f.user) r.free_dimensions.push_back(Dimension::User);
  if (!f.time) r.free_dimensions.push_back(Dimension::Time);
  for (auto& [key, ids] : groups) r.cells.push_back({key, ids.size(), ids});
  r.total = total;
  return r;
}

}  // namespace mediacube::oracle
