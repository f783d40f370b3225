#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "mediacube/calendar.hpp"
#include "mediacube/catalog_store.hpp"
#include "mediacube/document_code.hpp"

namespace mediacube {

// Usage cube over four dimensions. A query fixes any subset of them; the
// result groups the matching events by the remaining (free) dimensions. The
// 16 subsets are numbered 1 + 8*[doc] + 4*[context] + 2*[user] + [time],
// which is the row order of the usage cross-analysis table.

enum class Dimension { Document, Context, User, Time };

inline constexpr std::array<Dimension, 4> kAllDimensions{Dimension::Document, Dimension::Context,
                                                         Dimension::User, Dimension::Time};

/// "doc", "context", "user", "time".
std::string_view dimension_name(Dimension d) noexcept;
std::optional<Dimension> parse_dimension(std::string_view token) noexcept;

/// Half-open [start, end).
struct TimeRange {
  Instant start;
  Instant end;

  friend bool operator==(const TimeRange&, const TimeRange&) = default;
};

using TimeFilter = std::variant<Date, TimeRange>;

/// "YYYY-MM-DD" or "<instant>/<instant>". Throws Error(MalformedValue), or
/// Error(InvalidTimeRange) when start >= end.
TimeFilter parse_time_filter(std::string_view text);
std::string format_time_filter(const TimeFilter& f);

struct DimensionFilter {
  std::optional<DocumentCode> document;
  std::optional<std::string> context;
  std::optional<std::string> user;
  std::optional<TimeFilter> time;

  bool is_fixed(Dimension d) const noexcept;
};

struct CubeQuery {
  DimensionFilter fixed;
  Granularity granularity = Granularity::Day;
};

struct CubeCell {
  /// One value per free dimension, in Document, Context, User, Time order.
  std::vector<std::string> key;
  std::size_t count = 0;
  std::vector<EventId> event_ids;  // ascending

  friend bool operator==(const CubeCell&, const CubeCell&) = default;
};

struct CubeResult {
  int pattern = 1;
  std::vector<Dimension> free_dimensions;
  Granularity granularity = Granularity::Day;
  std::vector<CubeCell> cells;  // sorted by key
  std::size_t total = 0;

  friend bool operator==(const CubeResult&, const CubeResult&) = default;
};

int pattern_id(bool doc, bool context, bool user, bool time) noexcept;
int pattern_id(const CubeQuery& q) noexcept;
/// Inverse of pattern_id: which dimensions pattern `id` fixes.
std::array<bool, 4> fixed_dimensions(int id);

/// Throws Error(UnknownDocument / UnknownUser / UnknownContext) when a fixed
/// value is absent from the snapshot, Error(InvalidTimeRange) for an empty range.
CubeResult cube_query(const CatalogSnapshot& s, const CubeQuery& q);

/// Header of free-dimension names plus "count", one row per cell, then
/// "TOTAL\t<n>".
std::string format_tsv(const CubeResult& r);

// ---------------------------------------------------------------------------
// Reports. Each is a re-grouping of some cube query.

struct RankedDocument {
  DocumentCode code;
  std::size_t count = 0;

  friend bool operator==(const RankedDocument&, const RankedDocument&) = default;
};

/// Count descending, code ascending on ties.
std::vector<RankedDocument> document_importance(const CatalogSnapshot& s);

struct UserInterest {
  std::map<std::string, std::size_t> contexts;
  std::map<std::string, std::size_t> documents;  // by code text

  friend bool operator==(const UserInterest&, const UserInterest&) = default;
};

/// Throws Error(UnknownUser).
UserInterest user_interest(const CatalogSnapshot& s, std::string_view user_id);

struct BucketCount {
  std::string bucket;
  std::size_t count = 0;

  friend bool operator==(const BucketCount&, const BucketCount&) = default;
};

/// Ascending buckets; empty buckets omitted.
std::vector<BucketCount> usage_evolution(const CatalogSnapshot& s, Granularity g);

struct UsageTypeRatio {
  std::size_t repetitive = 0;
  std::size_t occasional = 0;

  friend bool operator==(const UsageTypeRatio&, const UsageTypeRatio&) = default;
};

UsageTypeRatio usage_type_ratio(const CatalogSnapshot& s);

inline constexpr std::string_view kUnspecifiedSocialClass = "unspecified";

/// (social class, context) -> events. Users without a class count as
/// "unspecified".
using SocialClassTable = std::map<std::pair<std::string, std::string>, std::size_t>;

SocialClassTable context_by_social_class(const CatalogSnapshot& s);

}  // namespace mediacube
