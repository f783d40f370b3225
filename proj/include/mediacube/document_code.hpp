#pragma once

#include <compare>
#include <functional>
#include <string>
#include <string_view>

namespace mediacube {

/// Links a generic record back to its origin. Either a source-scoped compound
/// id ("<source_id>:<local_id>") or an absolute http/https/file URI.
///
/// In the compound text form, ':' and '\' inside the local id are escaped with
/// a backslash. Codes are compared and ordered by their canonical text.
class DocumentCode {
 public:
  /// Throws Error(MalformedCode) if source_id is not [a-z0-9_-]{1,32}, or
  /// local_id is empty or holds control characters.
  static DocumentCode compound(std::string source_id, std::string local_id);
  /// Throws Error(MalformedCode) unless the text starts with a supported scheme.
  static DocumentCode uri(std::string uri);

  bool is_uri() const noexcept { return is_uri_; }
  /// Empty for URI codes.
  const std::string& source_id() const noexcept { return source_id_; }
  /// Empty for URI codes.
  const std::string& local_id() const noexcept { return local_id_; }
  /// Canonical text form (same as format_document_code).
  const std::string& text() const noexcept { return text_; }

  friend bool operator==(const DocumentCode& a, const DocumentCode& b) { return a.text_ == b.text_; }
  friend std::strong_ordering operator<=>(const DocumentCode& a, const DocumentCode& b) {
    return a.text_ <=> b.text_;
  }

 private:
  DocumentCode() = default;

  bool is_uri_ = false;
  std::string source_id_;
  std::string local_id_;
  std::string text_;
};

/// Throws Error(MalformedCode).
DocumentCode parse_document_code(std::string_view text);
std::string format_document_code(const DocumentCode& code);

bool is_valid_source_id(std::string_view id) noexcept;

}  // namespace mediacube

template <>
struct std::hash<mediacube::DocumentCode> {
  std::size_t operator()(const mediacube::DocumentCode& c) const noexcept {
    return std::hash<std::string>{}(c.text());
  }
};
