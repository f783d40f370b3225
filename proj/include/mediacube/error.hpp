#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mediacube {

/// Every failure the library reports is one of these. The names are stable and
/// appear verbatim in CLI diagnostics and service error bodies.
enum class ErrorCode {
  AllAbsent,
  DuplicateDescriptor,
  MalformedCode,
  MalformedValue,
  DuplicateSource,
  InvalidMapping,
  UnknownSource,
  SourceDisabled,
  SourceUnreachable,
  NotFoundAtSource,
  PresenceUndecidable,
  RequiredFieldMissing,
  TransformFailed,
  RecordInvalid,
  RecordNotFound,
  UnknownDocument,
  UnknownUser,
  UnknownContext,
  MalformedProfile,
  MalformedEvent,
  InvalidTimeRange,
  StorageIO,
  CorruptCatalog,
};

std::string_view error_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string detail);

  ErrorCode code() const noexcept { return code_; }
  std::string_view name() const noexcept { return error_name(code_); }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

/// Raised by catalog loading; carries the 1-based line that failed to parse.
class CorruptCatalogError : public Error {
 public:
  CorruptCatalogError(std::size_t line, const std::string& reason);

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace mediacube
