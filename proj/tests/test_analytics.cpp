#include "doctest.h"

#include <random>
#include <set>

#include "mediacube/analytics.hpp"
#include "mediacube/error.hpp"
#include "support/cube_oracle.hpp"
#include "support/fixtures.hpp"

using namespace mediacube;
using namespace mediacube::testing;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::MalformedValue;
}

using Key = std::vector<std::string>;

}  // namespace

TEST_CASE("pattern ids follow the fixed-dimension table") {
  CHECK(pattern_id(false, false, false, false) == 1);  // everything aggregated
  CHECK(pattern_id(false, false, true, true) == 4);    // fixed user and time
  CHECK(pattern_id(true, true, true, true) == 16);     // all four fixed
  std::set<int> seen;
  for (int d = 0; d < 2; ++d)
    for (int c = 0; c < 2; ++c)
      for (int u = 0; u < 2; ++u)
        for (int t = 0; t < 2; ++t) {
          int id = pattern_id(d, c, u, t);
          CHECK(id == 1 + 8 * d + 4 * c + 2 * u + t);
          CHECK(fixed_dimensions(id) == std::array<bool, 4>{d == 1, c == 1, u == 1, t == 1});
          seen.insert(id);
        }
  CHECK(seen.size() == 16);
}

TEST_CASE("fixture: pattern 5 with context teaching") {
  auto store = fixture_store();
  CubeQuery q;
  q.fixed.context = "teaching";
  CubeResult r = cube_query(*store->snapshot(), q);
  CHECK(r.pattern == 5);
  CHECK(r.free_dimensions == std::vector<Dimension>{Dimension::Document, Dimension::User, Dimension::Time});
  REQUIRE(r.cells.size() == 3);
  CHECK(r.cells[0] == CubeCell{Key{"fx:d1", "u1", "2024-01-01"}, 1, {1}});
  CHECK(r.cells[1] == CubeCell{Key{"fx:d1", "u1", "2024-01-02"}, 1, {4}});
  CHECK(r.cells[2] == CubeCell{Key{"fx:d2", "u1", "2024-01-02"}, 1, {3}});
  CHECK(r.total == 3);
  CHECK(r == oracle::cube(*store->snapshot(), q));
  CHECK(format_tsv(r) ==
        "doc\tuser\ttime\tcount\n"
        "fx:d1\tu1\t2024-01-01\t1\n"
        "fx:d1\tu1\t2024-01-02\t1\n"
        "fx:d2\tu1\t2024-01-02\t1\n"
        "TOTAL\t3\n");
}

TEST_CASE("fixture: pattern 16 returns the matching events") {
  auto store = fixture_store();
  CubeQuery q;
  q.fixed.document = code("fx:d1");
  q.fixed.context = "teaching";
  q.fixed.user = "u1";
  q.fixed.time = Date(2024, 1, 2);
  CubeResult r = cube_query(*store->snapshot(), q);
  CHECK(r.pattern == 16);
  REQUIRE(r.cells.size() == 1);
  CHECK(r.cells[0].key.empty());
  CHECK(r.cells[0].count == 1);
  CHECK(r.cells[0].event_ids == std::vector<EventId>{4});
}

TEST_CASE("fixture: pattern 1 and granularity") {
  auto snap = fixture_store()->snapshot();
  CubeQuery q;
  q.granularity = Granularity::Month;
  CubeResult r = cube_query(*snap, q);
  CHECK(r.pattern == 1);
  CHECK(r.total == 5);
  CHECK(r.cells.size() == 4);
  for (const auto& c : r.cells) CHECK(c.key.back() == "2024-01");
}

TEST_CASE("fixture: time ranges are half-open") {
  auto snap = fixture_store()->snapshot();
  CubeQuery q;
  q.fixed.time = parse_time_filter("2024-01-01T10:30:00Z/2024-01-02T23:59:59Z");
  CHECK(cube_query(*snap, q).total == 3);  // E2, E3, E4
  q.fixed.time = parse_time_filter("2024-01-02");
  CHECK(cube_query(*snap, q).total == 3);  // E3, E4, E5
  CHECK(code_of([] { parse_time_filter("2024-01-02T00:00:00Z/2024-01-02T00:00:00Z"); }) ==
        ErrorCode::InvalidTimeRange);
  CHECK(code_of([] { parse_time_filter("2024-13-01"); }) == ErrorCode::InvalidTimeRange);
  CHECK(format_time_filter(parse_time_filter("2024-01-02")) == "2024-01-02");
}

TEST_CASE("cube_query rejects unknown fixed values") {
  auto snap = fixture_store()->snapshot();
  CubeQuery q;
  q.fixed.document = code("fx:nope");
  CHECK(code_of([&] { cube_query(*snap, q); }) == ErrorCode::UnknownDocument);
  q = {};
  q.fixed.user = "u9";
  CHECK(code_of([&] { cube_query(*snap, q); }) == ErrorCode::UnknownUser);
  q = {};
  q.fixed.context = "gardening";
  CHECK(code_of([&] { cube_query(*snap, q); }) == ErrorCode::UnknownContext);
  q = {};
  q.fixed.context = "entertainment";  // known but unused: empty result
  CubeResult r = cube_query(*snap, q);
  CHECK(r.cells.empty());
  CHECK(r.total == 0);
}

TEST_CASE("fixture reports") {
  auto snap = fixture_store()->snapshot();
  CHECK(document_importance(*snap) ==
        std::vector<RankedDocument>{{code("fx:d1"), 3}, {code("fx:d2"), 2}});

  UserInterest u1 = user_interest(*snap, "u1");
  CHECK(u1.contexts == std::map<std::string, std::size_t>{{"teaching", 3}});
  CHECK(u1.documents == std::map<std::string, std::size_t>{{"fx:d1", 2}, {"fx:d2", 1}});
  UserInterest u2 = user_interest(*snap, "u2");
  CHECK(u2.contexts == std::map<std::string, std::size_t>{{"learning", 2}});
  CHECK(u2.documents == std::map<std::string, std::size_t>{{"fx:d1", 1}, {"fx:d2", 1}});
  CHECK(code_of([&] { user_interest(*snap, "u9"); }) == ErrorCode::UnknownUser);

  CHECK(usage_evolution(*snap, Granularity::Day) ==
        std::vector<BucketCount>{{"2024-01-01", 2}, {"2024-01-02", 3}});
  CHECK(usage_evolution(*snap, Granularity::Month) == std::vector<BucketCount>{{"2024-01", 5}});
  CHECK(usage_type_ratio(*snap) == UsageTypeRatio{0, 5});
  CHECK(context_by_social_class(*snap) ==
        SocialClassTable{{{"student", "teaching"}, 3}, {{"unspecified", "learning"}, 2}});
}

TEST_CASE("cube matches the brute-force oracle on random catalogs") {
  std::mt19937_64 rng(20240101);
  for (int round = 0; round < 25; ++round) {
    auto snap = random_store(rng, {20, 8, 8, 300})->snapshot();
    for (int pattern = 1; pattern <= 16; ++pattern) {
      CubeQuery q = random_query(rng, *snap, pattern);
      CubeResult got = cube_query(*snap, q);
      CHECK(got.pattern == pattern);
      CHECK(got == oracle::cube(*snap, q));
    }
  }
}

TEST_CASE("cell ids partition the filtered events") {
  std::mt19937_64 rng(99);
  auto snap = random_store(rng, {10, 5, 6, 200})->snapshot();
  CubeResult r = cube_query(*snap, {});
  std::set<EventId> ids;
  std::size_t sum = 0;
  for (const auto& c : r.cells) {
    CHECK(c.count == c.event_ids.size());
    CHECK(std::is_sorted(c.event_ids.begin(), c.event_ids.end()));
    ids.insert(c.event_ids.begin(), c.event_ids.end());
    sum += c.count;
  }
  CHECK(sum == r.total);
  CHECK(ids.size() == snap->events.size());
}
