#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mediacube/analytics.hpp"

namespace mediacube {

/// Bad command-line input: unknown flag, malformed value. Exit status 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomainError = 1;
inline constexpr int kExitUsage = 2;

inline constexpr const char* kCatalogEnv = "MEDIACUBE_CATALOG";

/// Applies one "<dim>=<value>" fix to a filter. Shared by the CLI's
/// `--fix` flag and the service's /cube query parameters.
/// Throws UsageError naming the expected grammar.
void apply_fix(DimensionFilter& filter, std::string_view dim, std::string_view value);
void apply_fix(DimensionFilter& filter, std::string_view expr);

/// Runs one invocation. `args` excludes the program name. Results go to
/// `out`, diagnostics to `err`. Never throws.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mediacube
