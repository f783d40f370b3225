#include "mediacube/descriptors.hpp"

#include <algorithm>
#include <array>

#include "mediacube/error.hpp"

namespace mediacube {

GenericRecord make_record(DocumentCode code, std::optional<TextDescriptor> text,
                          std::optional<ImageDescriptor> image,
                          std::optional<SoundDescriptor> sound) {
  MediaPresence p{text.has_value(), image.has_value(), sound.has_value()};
  return GenericRecord{std::move(code), classify(p), std::move(text), std::move(image),
                       std::move(sound)};
}

namespace {

template <class D>
GenericRecord attach(const GenericRecord& r, std::optional<D> GenericRecord::*slot, D d,
                     Medium m) {
  if ((r.*slot).has_value())
    throw Error(ErrorCode::DuplicateDescriptor,
                std::string(medium_name(m)) + " descriptor already attached to " +
                    r.document_code.text());
  GenericRecord out = r;
  out.*slot = std::move(d);
  out.media_class = classify(out.descriptor_presence());
  return out;
}

}  // namespace

GenericRecord attach_descriptor(const GenericRecord& r, TextDescriptor d) {
  return attach(r, &GenericRecord::text, std::move(d), Medium::Text);
}
GenericRecord attach_descriptor(const GenericRecord& r, ImageDescriptor d) {
  return attach(r, &GenericRecord::image, std::move(d), Medium::Image);
}
GenericRecord attach_descriptor(const GenericRecord& r, SoundDescriptor d) {
  return attach(r, &GenericRecord::sound, std::move(d), Medium::Sound);
}

// ---------------------------------------------------------------------------
// Field table

namespace {

[[noreturn]] void shape_mismatch(const FieldSpec& f) {
  throw Error(ErrorCode::MalformedValue,
              std::string(f.path) + ": value shape does not match the field kind");
}

const std::string& scalar(const FieldSpec& f, const FieldValue& v) {
  if (auto* s = std::get_if<std::string>(&v)) return *s;
  shape_mismatch(f);
}

const std::vector<std::string>& list(const FieldSpec& f, const FieldValue& v) {
  if (auto* l = std::get_if<std::vector<std::string>>(&v)) return *l;
  shape_mismatch(f);
}

void store(const FieldSpec& f, std::string& slot, const FieldValue& v) { slot = scalar(f, v); }
void store(const FieldSpec& f, std::optional<std::string>& slot, const FieldValue& v) {
  slot = scalar(f, v);
}
void store(const FieldSpec& f, std::optional<Date>& slot, const FieldValue& v) {
  slot = parse_date(scalar(f, v));
}
void store(const FieldSpec& f, std::vector<std::string>& slot, const FieldValue& v) {
  slot = list(f, v);
}
void store(const FieldSpec& f, std::vector<DocumentCode>& slot, const FieldValue& v) {
  std::vector<DocumentCode> codes;
  for (const auto& s : list(f, v)) codes.push_back(parse_document_code(s));
  slot = std::move(codes);
}

std::optional<FieldValue> load(const std::string& slot) { return FieldValue{slot}; }
std::optional<FieldValue> load(const std::optional<std::string>& slot) {
  if (!slot) return std::nullopt;
  return FieldValue{*slot};
}
std::optional<FieldValue> load(const std::optional<Date>& slot) {
  if (!slot) return std::nullopt;
  return FieldValue{format_date(*slot)};
}
std::optional<FieldValue> load(const std::vector<std::string>& slot) { return FieldValue{slot}; }
std::optional<FieldValue> load(const std::vector<DocumentCode>& slot) {
  std::vector<std::string> out;
  for (const auto& c : slot) out.push_back(c.text());
  return FieldValue{std::move(out)};
}

template <auto Slot, auto Member>
void set_impl(GenericRecord& r, const FieldSpec& f, const FieldValue& v) {
  auto& desc = r.*Slot;
  if (!desc) throw Error(ErrorCode::RecordInvalid, std::string(f.path) + ": descriptor absent");
  store(f, (*desc).*Member, v);
}

template <auto Slot, auto Member>
std::optional<FieldValue> get_impl(const GenericRecord& r) {
  const auto& desc = r.*Slot;
  if (!desc) return std::nullopt;
  return load((*desc).*Member);
}

struct FieldEntry {
  FieldSpec spec;
  void (*set)(GenericRecord&, const FieldSpec&, const FieldValue&);
  std::optional<FieldValue> (*get)(const GenericRecord&);
};

#define MC_FIELD(slot, type, member, medium, kind, required, vocabulary)                       \
  FieldEntry {                                                                                \
    FieldSpec{#slot "." #member, Medium::medium, FieldKind::kind, required, vocabulary},      \
        &set_impl<slot##_SLOT, &type::member>, &get_impl<slot##_SLOT, &type::member>           \
  }

constexpr auto text_SLOT = &GenericRecord::text;
constexpr auto image_SLOT = &GenericRecord::image;
constexpr auto sound_SLOT = &GenericRecord::sound;

using TD = TextDescriptor;
using ID = ImageDescriptor;
using SD = SoundDescriptor;

const std::array kFields{
    MC_FIELD(text, TD, author, Text, Label, false, ""),
    MC_FIELD(text, TD, title, Text, Label, true, ""),
    MC_FIELD(text, TD, summary, Text, Label, false, ""),
    MC_FIELD(text, TD, reference_date, Text, Date, false, ""),
    MC_FIELD(text, TD, descriptors, Text, LabelList, false, ""),
    MC_FIELD(text, TD, related_documents, Text, CodeList, false, ""),

    MC_FIELD(image, ID, dominant_colour, Image, Label, true, vocab::kColour),
    MC_FIELD(image, ID, secondary_colour, Image, Label, false, vocab::kColour),
    MC_FIELD(image, ID, dominant_shape, Image, Label, true, vocab::kShape),
    MC_FIELD(image, ID, secondary_shape, Image, Label, false, vocab::kShape),
    MC_FIELD(image, ID, shape_specificity, Image, Label, false, vocab::kShapeSpecificity),
    MC_FIELD(image, ID, dominant_object, Image, Label, false, vocab::kObject),
    MC_FIELD(image, ID, object_specificity, Image, Label, false, vocab::kObjectSpecificity),
    MC_FIELD(image, ID, secondary_object, Image, Label, false, vocab::kObject),
    MC_FIELD(image, ID, dominant_feature, Image, Label, false, vocab::kFeature),
    MC_FIELD(image, ID, secondary_feature, Image, Label, false, vocab::kFeature),
    MC_FIELD(image, ID, dominant_feature_subclass, Image, Label, false, vocab::kFeatureSubclass),
    MC_FIELD(image, ID, secondary_feature_subclass, Image, Label, false, vocab::kFeatureSubclass),
    MC_FIELD(image, ID, image_format, Image, Label, true, ""),
    MC_FIELD(image, ID, image_medium, Image, Label, true, vocab::kMedium),
    MC_FIELD(image, ID, image_type, Image, Label, true, vocab::kImageType),

    MC_FIELD(sound, SD, originator, Sound, Label, true, ""),
    MC_FIELD(sound, SD, target, Sound, Label, false, vocab::kTarget),
    MC_FIELD(sound, SD, descriptors, Sound, LabelList, false, ""),
    MC_FIELD(sound, SD, publication_date, Sound, Date, false, ""),
    MC_FIELD(sound, SD, sound_type, Sound, Label, true, vocab::kSoundType),
    MC_FIELD(sound, SD, sound_class, Sound, Label, false, vocab::kSoundClass),
    MC_FIELD(sound, SD, sound_subclass, Sound, Label, false, vocab::kSoundSubclass),
};

#undef MC_FIELD

const std::array<FieldSpec, kFields.size()> kSpecs = [] {
  std::array<FieldSpec, kFields.size()> specs{};
  for (std::size_t i = 0; i < kFields.size(); ++i) specs[i] = kFields[i].spec;
  return specs;
}();

const FieldEntry* find_entry(std::string_view path) noexcept {
  for (const auto& e : kFields)
    if (e.spec.path == path) return &e;
  return nullptr;
}

}  // namespace

std::span<const FieldSpec> generic_schema() noexcept { return kSpecs; }

const FieldSpec* find_field(std::string_view path) noexcept {
  for (const auto& s : kSpecs)
    if (s.path == path) return &s;
  return nullptr;
}

void assign_field(GenericRecord& r, const FieldSpec& field, const FieldValue& value) {
  const FieldEntry* e = find_entry(field.path);
  if (!e) throw Error(ErrorCode::MalformedValue, "no generic field " + std::string(field.path));
  e->set(r, field, value);
}

std::optional<FieldValue> read_field(const GenericRecord& r, const FieldSpec& field) {
  const FieldEntry* e = find_entry(field.path);
  if (!e) return std::nullopt;
  return e->get(r);
}

// ---------------------------------------------------------------------------
// Validation

bool ValidationReport::has_violation(std::string_view path) const {
  return std::any_of(violations.begin(), violations.end(),
                     [&](const Finding& f) { return f.path == path; });
}

namespace {

bool well_formed_label(std::string_view s) noexcept {
  if (s.empty()) return false;
  for (unsigned char c : s)
    if (c < 0x20 || c == 0x7f) return false;
  return true;
}

// "parent-child" or "parent.child", both sides non-empty.
bool well_formed_subclass(std::string_view s) noexcept {
  auto pos = s.find_first_of("-.");
  return pos != std::string_view::npos && pos > 0 && pos + 1 < s.size();
}

class Checker {
 public:
  Checker(const VocabularySet& vocabularies, ValidationReport& report)
      : vocabularies_(vocabularies), report_(report) {}

  void label(const FieldSpec& f, std::string_view value) {
    if (!well_formed_label(value)) {
      violation(f.path, rule::kLabelForm, "empty label or control character");
      return;
    }
    if (f.vocabulary.empty()) return;
    auto it = vocabularies_.find(f.vocabulary);
    if (it == vocabularies_.end() || it->second.contains(value)) return;
    std::string msg = "'" + std::string(value) + "' is not in vocabulary " + it->second.name();
    if (it->second.open())
      warning(f.path, rule::kVocabulary, std::move(msg));
    else
      violation(f.path, rule::kVocabulary, std::move(msg));
  }

  void violation(std::string_view path, std::string_view rule, std::string msg) {
    report_.violations.push_back({std::string(path), std::string(rule), std::move(msg)});
  }
  void warning(std::string_view path, std::string_view rule, std::string msg) {
    report_.warnings.push_back({std::string(path), std::string(rule), std::move(msg)});
  }

 private:
  const VocabularySet& vocabularies_;
  ValidationReport& report_;
};

void check_subclass(Checker& check, const ImageDescriptor& img) {
  auto pair = [&](const std::optional<std::string>& feature,
                  const std::optional<std::string>& subclass, std::string_view path) {
    if (!subclass) return;
    if (!feature)
      check.violation(path, rule::kSubclassWithoutFeature, "sub-class given without its feature");
    if (!well_formed_subclass(*subclass))
      check.violation(path, rule::kSubclassForm,
                      "'" + *subclass + "' is not of the form parent-child");
  };
  pair(img.dominant_feature, img.dominant_feature_subclass, "image.dominant_feature_subclass");
  pair(img.secondary_feature, img.secondary_feature_subclass, "image.secondary_feature_subclass");
}

}  // namespace

ValidationReport validate_record(const GenericRecord& r, const VocabularySet& vocabularies,
                                 const DocumentLookup& known) {
  ValidationReport report;
  Checker check(vocabularies, report);

  MediaPresence declared = decompose(r.media_class);
  MediaPresence actual = r.descriptor_presence();
  for (Medium m : kAllMedia) {
    if (declared.has(m) != actual.has(m))
      check.violation(medium_name(m), rule::kClassMismatch,
                      std::string(medium_name(m)) + " descriptor " +
                          (actual.has(m) ? "present" : "absent") + " but class is " +
                          std::string(class_token(r.media_class)));
  }

  for (const FieldSpec& f : generic_schema()) {
    auto value = read_field(r, f);
    if (!value) continue;
    if (auto* s = std::get_if<std::string>(&*value)) {
      if (f.required && s->empty()) {
        check.violation(f.path, rule::kRequired, "required field is empty");
        continue;
      }
      if (f.kind == FieldKind::Label) check.label(f, *s);
    } else if (f.kind == FieldKind::LabelList) {
      for (const auto& item : std::get<std::vector<std::string>>(*value)) check.label(f, item);
    }
  }

  if (r.image) check_subclass(check, *r.image);

  if (r.text && known) {
    for (const auto& code : r.text->related_documents)
      if (!known(code))
        check.warning("text.related_documents", rule::kDanglingReference,
                      code.text() + " is not in the catalog");
  }
  return report;
}

}  // namespace mediacube
