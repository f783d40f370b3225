#include "mediacube/analytics.hpp"

#include <algorithm>
#include <unordered_map>

#include "mediacube/error.hpp"

namespace mediacube {

std::string_view dimension_name(Dimension d) noexcept {
  switch (d) {
    case Dimension::Document: return "doc";
    case Dimension::Context: return "context";
    case Dimension::User: return "user";
    case Dimension::Time: return "time";
  }
  return "";
}

std::optional<Dimension> parse_dimension(std::string_view token) noexcept {
  for (Dimension d : kAllDimensions)
    if (dimension_name(d) == token) return d;
  return std::nullopt;
}

TimeFilter parse_time_filter(std::string_view text) {
  auto slash = text.find('/');
  TimeRange range;
  try {
    if (slash == std::string_view::npos) return parse_date(text);
    range = {parse_instant(text.substr(0, slash)), parse_instant(text.substr(slash + 1))};
  } catch (const Error& e) {
    throw Error(ErrorCode::InvalidTimeRange, e.detail());
  }
  if (!(range.start < range.end))
    throw Error(ErrorCode::InvalidTimeRange, "range start must precede its end: " + std::string(text));
  return range;
}

std::string format_time_filter(const TimeFilter& f) {
  if (auto* d = std::get_if<Date>(&f)) return format_date(*d);
  const auto& r = std::get<TimeRange>(f);
  return format_instant(r.start) + "/" + format_instant(r.end);
}

bool DimensionFilter::is_fixed(Dimension d) const noexcept {
  switch (d) {
    case Dimension::Document: return document.has_value();
    case Dimension::Context: return context.has_value();
    case Dimension::User: return user.has_value();
    case Dimension::Time: return time.has_value();
  }
  return false;
}

int pattern_id(bool doc, bool context, bool user, bool time) noexcept {
  return 1 + 8 * int(doc) + 4 * int(context) + 2 * int(user) + int(time);
}

int pattern_id(const CubeQuery& q) noexcept {
  const auto& f = q.fixed;
  return pattern_id(f.document.has_value(), f.context.has_value(), f.user.has_value(),
                    f.time.has_value());
}

std::array<bool, 4> fixed_dimensions(int id) {
  if (id < 1 || id > 16) throw Error(ErrorCode::MalformedValue, "pattern must be 1..16");
  int bits = id - 1;
  return {(bits & 8) != 0, (bits & 4) != 0, (bits & 2) != 0, (bits & 1) != 0};
}

// ---------------------------------------------------------------------------
// Cube

namespace {

bool time_matches(const TimeFilter& f, Instant t) {
  if (auto* d = std::get_if<Date>(&f)) return day_of(t) == *d;
  const auto& r = std::get<TimeRange>(f);
  return r.start <= t && t < r.end;
}

void check_fixed_values(const CatalogSnapshot& s, const DimensionFilter& f) {
  if (f.document && !s.find_record(*f.document))
    throw Error(ErrorCode::UnknownDocument, f.document->text());
  if (f.user && !s.find_user(*f.user)) throw Error(ErrorCode::UnknownUser, *f.user);
  if (f.context && !s.has_context(*f.context)) throw Error(ErrorCode::UnknownContext, *f.context);
  if (f.time) {
    if (auto* r = std::get_if<TimeRange>(&*f.time); r && !(r->start < r->end))
      throw Error(ErrorCode::InvalidTimeRange, format_time_filter(*f.time));
  }
}

// Maps each distinct string of one dimension to a dense id.
class Interner {
 public:
  std::uint32_t id(const std::string& value) {
    auto [it, inserted] = ids_.try_emplace(value, static_cast<std::uint32_t>(values_.size()));
    if (inserted) values_.push_back(&it->first);
    return it->second;
  }
  const std::string& value(std::uint32_t id) const { return *values_[id]; }

 private:
  std::unordered_map<std::string, std::uint32_t> ids_;
  std::vector<const std::string*> values_;
};

using PackedKey = std::array<std::uint32_t, 4>;

struct PackedKeyHash {
  std::size_t operator()(const PackedKey& k) const noexcept {
    std::size_t h = 0xcbf29ce484222325ull;
    for (auto v : k) h = (h ^ v) * 0x100000001b3ull;
    return h;
  }
};

}  // namespace

CubeResult cube_query(const CatalogSnapshot& s, const CubeQuery& q) {
  const DimensionFilter& f = q.fixed;
  check_fixed_values(s, f);

  CubeResult result;
  result.pattern = pattern_id(q);
  result.granularity = q.granularity;
  for (Dimension d : kAllDimensions)
    if (!f.is_fixed(d)) result.free_dimensions.push_back(d);

  std::array<Interner, 4> interners;
  std::unordered_map<PackedKey, std::vector<EventId>, PackedKeyHash> groups;

  for (const UsageEvent& e : s.events) {
    if (f.document && e.document_code != *f.document) continue;
    if (f.context && e.context != *f.context) continue;
    if (f.user && e.user_id != *f.user) continue;
    if (f.time && !time_matches(*f.time, e.timestamp)) continue;

    PackedKey key{};
    if (!f.document) key[0] = interners[0].id(e.document_code.text());
    if (!f.context) key[1] = interners[1].id(e.context);
    if (!f.user) key[2] = interners[2].id(e.user_id);
    if (!f.time) key[3] = interners[3].id(time_bucket(e.timestamp, q.granularity));
    groups[key].push_back(e.event_id);
    ++result.total;
  }

  result.cells.reserve(groups.size());
  for (auto& [key, ids] : groups) {
    CubeCell cell;
    for (std::size_t i = 0; i < 4; ++i)
      if (!f.is_fixed(kAllDimensions[i])) cell.key.push_back(interners[i].value(key[i]));
    std::sort(ids.begin(), ids.end());
    cell.count = ids.size();
    cell.event_ids = std::move(ids);
    result.cells.push_back(std::move(cell));
  }
  std::sort(result.cells.begin(), result.cells.end(),
            [](const CubeCell& a, const CubeCell& b) { return a.key < b.key; });
  return result;
}

std::string format_tsv(const CubeResult& r) {
  std::string out;
  for (Dimension d : r.free_dimensions) {
    out += dimension_name(d);
    out += '\t';
  }
  out += "count\n";
  for (const auto& cell : r.cells) {
    for (const auto& v : cell.key) {
      out += v;
      out += '\t';
    }
    out += std::to_string(cell.count);
    out += '\n';
  }
  out += "TOTAL\t" + std::to_string(r.total) + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// Reports

std::vector<RankedDocument> document_importance(const CatalogSnapshot& s) {
  std::map<DocumentCode, std::size_t> counts;
  for (const auto& e : s.events) ++counts[e.document_code];
  std::vector<RankedDocument> out;
  out.reserve(counts.size());
  for (const auto& [code, n] : counts) out.push_back({code, n});
  std::stable_sort(out.begin(), out.end(), [](const RankedDocument& a, const RankedDocument& b) {
    return a.count > b.count;
  });
  return out;
}

UserInterest user_interest(const CatalogSnapshot& s, std::string_view user_id) {
  if (!s.find_user(user_id)) throw Error(ErrorCode::UnknownUser, std::string(user_id));
  UserInterest out;
  for (const auto& e : s.events) {
    if (e.user_id != user_id) continue;
    ++out.contexts[e.context];
    ++out.documents[e.document_code.text()];
  }
  return out;
}

std::vector<BucketCount> usage_evolution(const CatalogSnapshot& s, Granularity g) {
  std::map<std::string, std::size_t> counts;
  for (const auto& e : s.events) ++counts[time_bucket(e.timestamp, g)];
  std::vector<BucketCount> out;
  for (auto& [bucket, n] : counts) out.push_back({bucket, n});
  return out;
}

UsageTypeRatio usage_type_ratio(const CatalogSnapshot& s) {
  UsageTypeRatio r;
  for (const auto& e : s.events) {
    if (e.use_type == UseType::Repetitive)
      ++r.repetitive;
    else
      ++r.occasional;
  }
  return r;
}

SocialClassTable context_by_social_class(const CatalogSnapshot& s) {
  SocialClassTable table;
  for (const auto& e : s.events) {
    std::string social(kUnspecifiedSocialClass);
    if (const UserProfile* u = s.find_user(e.user_id); u && u->social_class && !u->social_class->empty())
      social = *u->social_class;
    ++table[{social, e.context}];
  }
  return table;
}

}  // namespace mediacube
