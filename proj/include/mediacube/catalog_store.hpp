#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

#include "mediacube/calendar.hpp"
#include "mediacube/descriptors.hpp"
#include "mediacube/document_code.hpp"
#include "mediacube/federation.hpp"

namespace mediacube {

enum class UseType { Repetitive, Occasional };

std::string_view use_type_name(UseType t) noexcept;
/// Accepts "repetitive" / "occasional"; throws Error(MalformedValue).
UseType parse_use_type(std::string_view token);

using EventId = std::uint64_t;

struct UsageEvent {
  EventId event_id = 0;  // assigned by the store
  DocumentCode document_code;
  std::string context;
  std::string user_id;
  Instant timestamp;
  UseType use_type = UseType::Occasional;

  friend bool operator==(const UsageEvent&, const UsageEvent&) = default;
};

struct UserProfile {
  std::string user_id;
  std::string name;
  std::optional<std::string> address;
  std::optional<std::string> social_class;

  friend bool operator==(const UserProfile&, const UserProfile&) = default;
};

enum class ContextOrigin { Static, Dynamic };

std::string_view context_origin_name(ContextOrigin o) noexcept;

struct ContextEntry {
  std::string label;
  ContextOrigin origin = ContextOrigin::Static;
  Instant first_seen;

  friend bool operator==(const ContextEntry&, const ContextEntry&) = default;
};

/// teaching, learning, documentation, entertainment.
const std::vector<std::string>& static_context_labels();

/// Immutable, internally consistent view of the catalog.
struct CatalogSnapshot {
  std::map<DocumentCode, GenericRecord> records;
  std::vector<UsageEvent> events;  // insertion order, ids strictly increasing
  std::map<std::string, UserProfile, std::less<>> users;
  std::vector<ContextEntry> contexts;  // static first, then by first_seen
  std::vector<SourceDescriptor> sources;  // sorted by source id
  Instant taken_at;

  const GenericRecord* find_record(const DocumentCode& code) const;
  const UserProfile* find_user(std::string_view user_id) const;
  bool has_context(std::string_view label) const;
};

/// Equality of everything except taken_at.
bool same_contents(const CatalogSnapshot& a, const CatalogSnapshot& b);

/// The generic database plus usage log, user table, context registry and
/// registered sources.
///
/// Single writer, many readers: mutators take an exclusive lock, readers a
/// shared one, and snapshot() hands out an immutable copy that later writes
/// never touch.
class CatalogStore {
 public:
  CatalogStore();

  CatalogStore(const CatalogStore&) = delete;
  CatalogStore& operator=(const CatalogStore&) = delete;

  /// Replaces any record with the same code. Throws Error(RecordInvalid).
  void put_record(GenericRecord r);
  /// Throws Error(RecordNotFound).
  GenericRecord get_record(const DocumentCode& code) const;
  bool has_record(const DocumentCode& code) const;

  /// Upsert. Throws Error(MalformedProfile) for an empty or non-printable id.
  void register_user(UserProfile p);
  /// Throws Error(UnknownUser).
  UserProfile get_user(std::string_view user_id) const;

  /// Appends the event and returns its id (e.event_id is ignored). A context
  /// not yet registered becomes a dynamic entry first seen at e.timestamp.
  /// Throws Error(UnknownDocument), Error(UnknownUser), Error(MalformedEvent).
  EventId record_usage(UsageEvent e);

  std::vector<ContextEntry> list_contexts() const;

  /// Upsert by source id.
  void put_source(SourceDescriptor d);
  std::vector<SourceDescriptor> sources() const;

  std::shared_ptr<const CatalogSnapshot> snapshot() const;

  /// JSON Lines, keys sorted, byte-deterministic. Throws Error(StorageIO).
  void save(const std::filesystem::path& path) const;
  /// Throws Error(StorageIO) or CorruptCatalogError.
  static std::unique_ptr<CatalogStore> load(const std::filesystem::path& path);

  /// Writes the canonical serialization of a snapshot.
  static std::string serialize(const CatalogSnapshot& s);
  /// Inverse of serialize. Throws CorruptCatalogError.
  static std::unique_ptr<CatalogStore> deserialize(std::string_view text);

 private:
  void sort_contexts_locked();

  mutable std::shared_mutex mutex_;
  CatalogSnapshot state_;
  EventId next_event_id_ = 1;
  mutable std::shared_ptr<const CatalogSnapshot> cached_;
};

}  // namespace mediacube
