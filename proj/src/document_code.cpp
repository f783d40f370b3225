#include "mediacube/document_code.hpp"

#include <array>

#include "mediacube/error.hpp"

namespace mediacube {

namespace {

constexpr std::array<std::string_view, 3> kUriSchemes{"http://", "https://", "file://"};

bool has_uri_scheme(std::string_view text) noexcept {
  for (auto scheme : kUriSchemes)
    if (text.size() > scheme.size() && text.substr(0, scheme.size()) == scheme) return true;
  return false;
}

bool has_control(std::string_view text) noexcept {
  for (unsigned char c : text)
    if (c < 0x20 || c == 0x7f) return true;
  return false;
}

std::string escape_local(std::string_view local) {
  std::string out;
  out.reserve(local.size());
  for (char c : local) {
    if (c == ':' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

[[noreturn]] void malformed(std::string_view text, std::string_view why) {
  throw Error(ErrorCode::MalformedCode, "'" + std::string(text) + "': " + std::string(why));
}

}  // namespace

bool is_valid_source_id(std::string_view id) noexcept {
  if (id.empty() || id.size() > 32) return false;
  for (char c : id) {
    bool ok = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_' || c == '-';
    if (!ok) return false;
  }
  return true;
}

DocumentCode DocumentCode::compound(std::string source_id, std::string local_id) {
  if (!is_valid_source_id(source_id)) malformed(source_id, "source id must match [a-z0-9_-]{1,32}");
  if (local_id.empty()) malformed(source_id + ":", "empty local id");
  if (has_control(local_id)) malformed(local_id, "control character in local id");
  DocumentCode code;
  code.text_ = source_id + ":" + escape_local(local_id);
  // "http" + "//host" would read back as a URI.
  if (has_uri_scheme(code.text_)) malformed(code.text_, "compound code collides with a URI scheme");
  code.source_id_ = std::move(source_id);
  code.local_id_ = std::move(local_id);
  return code;
}

DocumentCode DocumentCode::uri(std::string uri) {
  if (!has_uri_scheme(uri)) malformed(uri, "URI must start with http://, https:// or file://");
  if (has_control(uri) || uri.find(' ') != std::string::npos) malformed(uri, "whitespace in URI");
  DocumentCode code;
  code.is_uri_ = true;
  code.text_ = std::move(uri);
  return code;
}

DocumentCode parse_document_code(std::string_view text) {
  if (text.empty()) malformed(text, "empty code");
  if (has_uri_scheme(text)) return DocumentCode::uri(std::string(text));

  std::string source;
  std::string local;
  bool seen_separator = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (!seen_separator) {
      if (c == ':') {
        seen_separator = true;
      } else {
        source.push_back(c);
      }
      continue;
    }
    if (c == '\\') {
      if (i + 1 >= text.size()) malformed(text, "dangling escape");
      char next = text[++i];
      if (next != ':' && next != '\\') malformed(text, "bad escape");
      local.push_back(next);
    } else if (c == ':') {
      malformed(text, "unescaped ':' in local id");
    } else {
      local.push_back(c);
    }
  }
  if (!seen_separator) malformed(text, "missing ':' separator and not a URI");
  return DocumentCode::compound(std::move(source), std::move(local));
}

std::string format_document_code(const DocumentCode& code) { return code.text(); }

}  // namespace mediacube
