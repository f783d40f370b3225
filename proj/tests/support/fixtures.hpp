#pragma once

#include <memory>
#include <random>
#include <string>
#include <vector>

#include "mediacube/analytics.hpp"
#include "mediacube/catalog_store.hpp"
#include "mediacube/descriptors.hpp"

namespace mediacube::testing {

inline TextDescriptor sample_text(std::string title = "A Book") {
  TextDescriptor t;
  t.title = std::move(title);
  t.author = "Y";
  t.descriptors = {"history", "maps"};
  t.reference_date = Date(2001, 5, 17);
  return t;
}

inline ImageDescriptor sample_image() {
  ImageDescriptor i;
  i.dominant_colour = "blue";
  i.secondary_colour = "white";
  i.dominant_shape = "rectangle";
  i.image_format = "jpeg";
  i.image_medium = "paper";
  i.image_type = "digital image";
  i.dominant_feature = "animal";
  i.dominant_feature_subclass = "animal-mammal";
  return i;
}

inline SoundDescriptor sample_sound() {
  SoundDescriptor s;
  s.originator = "Radio Nancy";
  s.sound_type = "music";
  s.target = "public";
  s.sound_class = "music";
  return s;
}

inline DocumentCode code(const std::string& text) { return parse_document_code(text); }

inline GenericRecord record_of(MediaClass c, const std::string& code_text) {
  MediaPresence p = decompose(c);
  return make_record(code(code_text), p.text ? std::optional(sample_text()) : std::nullopt,
                     p.image ? std::optional(sample_image()) : std::nullopt,
                     p.sound ? std::optional(sample_sound()) : std::nullopt);
}

inline Instant at(const char* iso) { return parse_instant(iso); }

/// The five-event fixture:
///   E1(d1,teaching,u1,2024-01-01) E2(d1,learning,u2,2024-01-01)
///   E3(d2,teaching,u1,2024-01-02) E4(d1,teaching,u1,2024-01-02)
///   E5(d2,learning,u2,2024-01-02)
/// u1 is a "student"; u2 has no social class.
inline std::unique_ptr<CatalogStore> fixture_store() {
  auto store = std::make_unique<CatalogStore>();
  store->put_record(record_of(MediaClass::Text, "fx:d1"));
  store->put_record(record_of(MediaClass::ImageSound, "fx:d2"));
  store->register_user({"u1", "Ada", "1 Rue A", "student"});
  store->register_user({"u2", "Bob", std::nullopt, std::nullopt});
  auto log = [&](const char* doc, const char* ctx, const char* user, const char* when) {
    store->record_usage({0, code(doc), ctx, user, at(when), UseType::Occasional});
  };
  log("fx:d1", "teaching", "u1", "2024-01-01T09:00:00Z");
  log("fx:d1", "learning", "u2", "2024-01-01T10:30:00Z");
  log("fx:d2", "teaching", "u1", "2024-01-02T08:15:00Z");
  log("fx:d1", "teaching", "u1", "2024-01-02T14:00:00Z");
  log("fx:d2", "learning", "u2", "2024-01-02T23:59:59Z");
  return store;
}

struct RandomCatalogShape {
  std::size_t max_documents = 50;
  std::size_t max_users = 20;
  std::size_t max_contexts = 10;
  std::size_t max_events = 1000;
};

/// Random but valid catalog. Timestamps span late 2023 to early 2024 so day,
/// month and year buckets all split.
inline std::unique_ptr<CatalogStore> random_store(std::mt19937_64& rng,
                                                  const RandomCatalogShape& shape = {}) {
  auto pick = [&](std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
  };
  auto store = std::make_unique<CatalogStore>();

  std::size_t n_docs = pick(1, shape.max_documents);
  std::vector<DocumentCode> docs;
  for (std::size_t i = 0; i < n_docs; ++i) {
    std::string text = (pick(0, 9) == 0 ? "https://example.org/d/" : "src" + std::to_string(pick(0, 2)) + ":doc-") +
                       std::to_string(i);
    MediaClass c = kAllMediaClasses[pick(0, 6)];
    store->put_record(record_of(c, text));
    docs.push_back(code(text));
  }

  const std::vector<std::string> classes{"student", "researcher", "teacher", ""};
  std::size_t n_users = pick(1, shape.max_users);
  std::vector<std::string> users;
  for (std::size_t i = 0; i < n_users; ++i) {
    std::string id = "u" + std::to_string(i);
    const std::string& sc = classes[pick(0, classes.size() - 1)];
    store->register_user({id, "User " + std::to_string(i), std::nullopt,
                          sc.empty() ? std::nullopt : std::optional<std::string>(sc)});
    users.push_back(id);
  }

  std::vector<std::string> contexts = static_context_labels();
  std::size_t extra = pick(0, shape.max_contexts > 4 ? shape.max_contexts - 4 : 0);
  for (std::size_t i = 0; i < extra; ++i) contexts.push_back("ctx-" + std::to_string(i));

  Instant base = parse_instant("2023-11-15T00:00:00Z");
  std::size_t n_events = pick(0, shape.max_events);
  for (std::size_t i = 0; i < n_events; ++i) {
    Instant t = base + std::chrono::seconds(pick(0, 120 * 86400));
    store->record_usage({0, docs[pick(0, docs.size() - 1)], contexts[pick(0, contexts.size() - 1)],
                         users[pick(0, users.size() - 1)], t,
                         pick(0, 1) ? UseType::Repetitive : UseType::Occasional});
  }
  return store;
}

/// Fixes exactly the dimensions that `pattern` (1..16) fixes, drawing each
/// value from the snapshot (events, when there are any, so cells are hit).
inline CubeQuery random_query(std::mt19937_64& rng, const CatalogSnapshot& s, int pattern) {
  auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
  auto fixed = fixed_dimensions(pattern);
  const UsageEvent* e = s.events.empty() ? nullptr : &s.events[pick(s.events.size())];

  CubeQuery q;
  q.granularity = std::array{Granularity::Day, Granularity::Month, Granularity::Year}[pick(3)];
  if (fixed[0]) {
    if (e && pick(4) != 0) {
      q.fixed.document = e->document_code;
    } else {
      auto it = s.records.begin();
      std::advance(it, static_cast<long>(pick(s.records.size())));
      q.fixed.document = it->first;
    }
  }
  if (fixed[1]) q.fixed.context = (e && pick(4) != 0) ? e->context : s.contexts[pick(s.contexts.size())].label;
  if (fixed[2]) {
    if (e && pick(4) != 0) {
      q.fixed.user = e->user_id;
    } else {
      auto it = s.users.begin();
      std::advance(it, static_cast<long>(pick(s.users.size())));
      q.fixed.user = it->first;
    }
  }
  if (fixed[3]) {
    Instant anchor = e ? e->timestamp : parse_instant("2024-01-01T00:00:00Z");
    if (pick(2) == 0) {
      q.fixed.time = day_of(anchor);
    } else {
      Instant start = anchor - std::chrono::seconds(pick(10 * 86400));
      q.fixed.time = TimeRange{start, start + std::chrono::seconds(1 + pick(20 * 86400))};
    }
  }
  return q;
}

}  // namespace mediacube::testing
