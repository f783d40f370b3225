#include "mediacube/error.hpp"

namespace mediacube {

std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::AllAbsent: return "AllAbsent";
    case ErrorCode::DuplicateDescriptor: return "DuplicateDescriptor";
    case ErrorCode::MalformedCode: return "MalformedCode";
    case ErrorCode::MalformedValue: return "MalformedValue";
    case ErrorCode::DuplicateSource: return "DuplicateSource";
    case ErrorCode::InvalidMapping: return "InvalidMapping";
    case ErrorCode::UnknownSource: return "UnknownSource";
    case ErrorCode::SourceDisabled: return "SourceDisabled";
    case ErrorCode::SourceUnreachable: return "SourceUnreachable";
    case ErrorCode::NotFoundAtSource: return "NotFoundAtSource";
    case ErrorCode::PresenceUndecidable: return "PresenceUndecidable";
    case ErrorCode::RequiredFieldMissing: return "RequiredFieldMissing";
    case ErrorCode::TransformFailed: return "TransformFailed";
    case ErrorCode::RecordInvalid: return "RecordInvalid";
    case ErrorCode::RecordNotFound: return "RecordNotFound";
    case ErrorCode::UnknownDocument: return "UnknownDocument";
    case ErrorCode::UnknownUser: return "UnknownUser";
    case ErrorCode::UnknownContext: return "UnknownContext";
    case ErrorCode::MalformedProfile: return "MalformedProfile";
    case ErrorCode::MalformedEvent: return "MalformedEvent";
    case ErrorCode::InvalidTimeRange: return "InvalidTimeRange";
    case ErrorCode::StorageIO: return "StorageIO";
    case ErrorCode::CorruptCatalog: return "CorruptCatalog";
  }
  return "Unknown";
}

namespace {

std::string compose(ErrorCode code, const std::string& detail) {
  std::string msg(error_name(code));
  if (!detail.empty()) {
    msg += ": ";
    msg += detail;
  }
  return msg;
}

}  // namespace

Error::Error(ErrorCode code, std::string detail)
    : std::runtime_error(compose(code, detail)), code_(code), detail_(std::move(detail)) {}

CorruptCatalogError::CorruptCatalogError(std::size_t line, const std::string& reason)
    : Error(ErrorCode::CorruptCatalog, "line " + std::to_string(line) + ": " + reason),
      line_(line) {}

}  // namespace mediacube
