#pragma once

#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

#include "mediacube/descriptors.hpp"
#include "mediacube/document_code.hpp"
#include "mediacube/taxonomy.hpp"
#include "mediacube/vocabulary.hpp"

namespace mediacube {

// ---------------------------------------------------------------------------
// Declarative mapping from a source's raw fields into the generic schema.

enum class Transform { Identity, Lowercase, DateParse, SplitList };

std::string_view transform_name(Transform t) noexcept;
/// Accepts "identity", "lowercase", "date-parse", "split-list".
std::optional<Transform> parse_transform(std::string_view token) noexcept;

/// Marks `medium` present when the raw field is non-empty, or, if `equals`
/// is set, when it holds exactly that value.
struct PresenceRule {
  Medium medium = Medium::Text;
  std::string field;
  std::optional<std::string> equals;

  friend bool operator==(const PresenceRule&, const PresenceRule&) = default;
};

struct FieldRule {
  std::string source_field;
  std::string target;  // generic path, e.g. "image.dominant_colour"
  Transform transform = Transform::Identity;

  friend bool operator==(const FieldRule&, const FieldRule&) = default;
};

struct FieldMapping {
  std::vector<PresenceRule> presence_rules;
  std::vector<FieldRule> field_rules;
  /// Generic path -> value used when no rule supplies the field.
  std::map<std::string, std::string> defaults;
  /// Raw field holding a URI to use as the document code instead of the
  /// compound source code.
  std::optional<std::string> uri_field;
  /// Column holding the local id (tabular sources only).
  std::string id_field = "id";

  friend bool operator==(const FieldMapping&, const FieldMapping&) = default;
};

/// Throws Error(InvalidMapping) naming the offending rule or path.
void validate_mapping(const FieldMapping& m);

/// Applies one transform to a raw value. Throws Error(TransformFailed).
FieldValue apply_transform(Transform t, const FieldSpec& target, std::string_view raw);

/// Accepts YYYY-MM-DD, YYYY/MM/DD, YYYYMMDD, DD.MM.YYYY and an ISO instant.
std::optional<Date> parse_loose_date(std::string_view raw);

// ---------------------------------------------------------------------------
// Sources

enum class SourceKind { Tabular, FileTree, RemoteLine };

std::string_view source_kind_name(SourceKind k) noexcept;
std::optional<SourceKind> parse_source_kind(std::string_view token) noexcept;

struct SourceDescriptor {
  std::string source_id;
  SourceKind kind = SourceKind::Tabular;
  /// Path for tabular / file-tree sources, "tcp://host:port" for remote-line.
  std::string location;
  FieldMapping mapping;
  bool enabled = true;

  friend bool operator==(const SourceDescriptor&, const SourceDescriptor&) = default;
};

struct SourceRecord {
  std::string source_id;
  std::string local_id;
  std::map<std::string, std::string> raw_fields;

  friend bool operator==(const SourceRecord&, const SourceRecord&) = default;
};

/// A problem with one record; the rest of the harvest continues.
struct RecordError {
  std::string where;  // local id, or "line N" when no id could be read
  std::string message;
};

struct HarvestResult {
  std::vector<SourceRecord> records;  // sorted by local_id
  std::vector<RecordError> errors;
};

/// Reads one source. One instance serves one harvest or resolve at a time.
class SourceAdapter {
 public:
  virtual ~SourceAdapter() = default;

  /// Throws Error(SourceUnreachable) if the source cannot be opened at all.
  virtual HarvestResult harvest() = 0;
  /// Throws Error(NotFoundAtSource) or Error(SourceUnreachable).
  virtual SourceRecord fetch(const std::string& local_id) = 0;
};

std::unique_ptr<SourceAdapter> make_adapter(const SourceDescriptor& d);

/// Produces the generic record for one raw record.
///
/// Throws Error(PresenceUndecidable) when no medium is evidenced,
/// Error(RequiredFieldMissing) naming the generic path, Error(TransformFailed)
/// when a value cannot be converted, and Error(RecordInvalid) when the result
/// still has validation violations.
GenericRecord map_to_generic(const SourceRecord& raw, const FieldMapping& m,
                             const VocabularySet& vocabularies = builtin_vocabularies());

/// Registered federated sources. Reads may run concurrently; writes are
/// serialized.
class SourceRegistry {
 public:
  /// Throws Error(DuplicateSource), Error(InvalidMapping), or
  /// Error(MalformedValue) for a bad source id or location.
  std::string register_source(SourceDescriptor d);
  /// Throws Error(UnknownSource).
  void set_enabled(std::string_view source_id, bool enabled);

  /// Throws Error(UnknownSource).
  SourceDescriptor get(std::string_view source_id) const;
  bool contains(std::string_view source_id) const;
  /// Sorted by source id.
  std::vector<SourceDescriptor> list() const;

  /// Throws Error(UnknownSource), Error(SourceDisabled), Error(SourceUnreachable).
  HarvestResult harvest(std::string_view source_id) const;

  /// Fetches the full origin record. URI codes yield {"uri": <uri>} with the
  /// fetch left to the caller.
  SourceRecord resolve(const DocumentCode& code) const;

 private:
  mutable std::shared_mutex mutex_;
  std::map<std::string, SourceDescriptor, std::less<>> sources_;
};

}  // namespace mediacube
