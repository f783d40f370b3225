#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mediacube/calendar.hpp"
#include "mediacube/document_code.hpp"
#include "mediacube/taxonomy.hpp"
#include "mediacube/vocabulary.hpp"

namespace mediacube {

struct TextDescriptor {
  std::string title;
  std::optional<std::string> author;
  std::optional<std::string> summary;
  /// Publication date of the enclosing document.
  std::optional<Date> reference_date;
  std::vector<std::string> descriptors;
  std::vector<DocumentCode> related_documents;

  friend bool operator==(const TextDescriptor&, const TextDescriptor&) = default;
};

struct ImageDescriptor {
  std::string dominant_colour;
  std::optional<std::string> secondary_colour;
  std::string dominant_shape;
  std::optional<std::string> secondary_shape;
  std::optional<std::string> shape_specificity;
  std::optional<std::string> dominant_object;
  std::optional<std::string> object_specificity;
  std::optional<std::string> secondary_object;
  std::optional<std::string> dominant_feature;
  std::optional<std::string> secondary_feature;
  std::optional<std::string> dominant_feature_subclass;
  std::optional<std::string> secondary_feature_subclass;
  std::string image_format;
  std::string image_medium;
  std::string image_type;

  friend bool operator==(const ImageDescriptor&, const ImageDescriptor&) = default;
};

struct SoundDescriptor {
  std::string originator;
  std::string target = "not-specified";
  std::vector<std::string> descriptors;
  std::optional<Date> publication_date;
  std::string sound_type;
  std::optional<std::string> sound_class;
  std::optional<std::string> sound_subclass;

  friend bool operator==(const SoundDescriptor&, const SoundDescriptor&) = default;
};

/// One entry of the derived (generic) database.
struct GenericRecord {
  DocumentCode document_code;
  MediaClass media_class;
  std::optional<TextDescriptor> text;
  std::optional<ImageDescriptor> image;
  std::optional<SoundDescriptor> sound;

  MediaPresence descriptor_presence() const noexcept {
    return MediaPresence{text.has_value(), image.has_value(), sound.has_value()};
  }

  friend bool operator==(const GenericRecord&, const GenericRecord&) = default;
};

/// Builds a record whose class is derived from which descriptors are given.
/// Throws Error(AllAbsent) when all three are empty.
GenericRecord make_record(DocumentCode code, std::optional<TextDescriptor> text,
                          std::optional<ImageDescriptor> image,
                          std::optional<SoundDescriptor> sound);

/// Throw Error(DuplicateDescriptor) if a descriptor of that kind is present.
GenericRecord attach_descriptor(const GenericRecord& r, TextDescriptor d);
GenericRecord attach_descriptor(const GenericRecord& r, ImageDescriptor d);
GenericRecord attach_descriptor(const GenericRecord& r, SoundDescriptor d);

// ---------------------------------------------------------------------------
// Generic schema: the flat "<medium>.<field>" paths used by mappings and the
// serialized form.

enum class FieldKind { Label, Date, LabelList, CodeList };

struct FieldSpec {
  std::string_view path;
  Medium medium;
  FieldKind kind;
  bool required;
  /// Vocabulary name, empty when the field is free text.
  std::string_view vocabulary;

  std::string_view name() const noexcept { return path.substr(path.find('.') + 1); }
};

std::span<const FieldSpec> generic_schema() noexcept;
const FieldSpec* find_field(std::string_view path) noexcept;

/// Scalar fields hold a string (dates in ISO form); list fields a vector.
using FieldValue = std::variant<std::string, std::vector<std::string>>;

/// Writes into the record's descriptor for the field's medium, which must be
/// present. Throws Error(MalformedValue / MalformedCode) for unparsable dates
/// or document codes, and when the value shape does not match the field kind.
void assign_field(GenericRecord& r, const FieldSpec& field, const FieldValue& value);

/// Empty when the descriptor or the optional field is absent.
std::optional<FieldValue> read_field(const GenericRecord& r, const FieldSpec& field);

// ---------------------------------------------------------------------------
// Validation

struct Finding {
  std::string path;
  std::string rule;
  std::string message;

  friend bool operator==(const Finding&, const Finding&) = default;
};

struct ValidationReport {
  std::vector<Finding> violations;
  std::vector<Finding> warnings;

  bool ok() const noexcept { return violations.empty(); }
  bool has_violation(std::string_view path) const;
};

namespace rule {
inline constexpr std::string_view kClassMismatch = "descriptor/class mismatch";
inline constexpr std::string_view kRequired = "required";
inline constexpr std::string_view kVocabulary = "vocabulary";
inline constexpr std::string_view kSubclassForm = "subclass-form";
inline constexpr std::string_view kSubclassWithoutFeature = "subclass-without-feature";
inline constexpr std::string_view kLabelForm = "label-form";
inline constexpr std::string_view kDanglingReference = "dangling-reference";
}  // namespace rule

using DocumentLookup = std::function<bool(const DocumentCode&)>;

/// Never throws for data problems: everything lands in the report. When
/// `known` is given, related documents it rejects are reported as warnings.
ValidationReport validate_record(const GenericRecord& r, const VocabularySet& vocabularies,
                                 const DocumentLookup& known = {});

}  // namespace mediacube
