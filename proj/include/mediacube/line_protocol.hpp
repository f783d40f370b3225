#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mediacube::line {

// Newline-delimited request/response protocol spoken by remote-line sources.
//
//   client: "LIST\n"          server: one local id per line, then ""
//   client: "GET <id>\n"      server: "field\tvalue" lines, then ""
//   either reply may instead be a single "ERR <msg>" line.

/// Connected socket that reads and writes whole lines. Owns the descriptor.
class LineStream {
 public:
  explicit LineStream(int fd) noexcept : fd_(fd) {}
  LineStream(LineStream&& other) noexcept;
  LineStream& operator=(LineStream&& other) noexcept;
  LineStream(const LineStream&) = delete;
  LineStream& operator=(const LineStream&) = delete;
  ~LineStream();

  /// Line without its terminator ("\n" or "\r\n"); nullopt at end of stream.
  /// Throws std::system_error on a read failure or timeout.
  std::optional<std::string> read_line();
  /// Throws std::system_error if the peer is gone.
  void write(std::string_view data);

  int fd() const noexcept { return fd_; }

 private:
  int fd_ = -1;
  std::string buffer_;
};

struct Endpoint {
  std::string host;
  std::uint16_t port = 0;
};

/// Parses "tcp://host:port". Returns nullopt on anything else.
std::optional<Endpoint> parse_endpoint(std::string_view location);

/// Throws Error(SourceUnreachable) if the connection cannot be established.
LineStream connect(const Endpoint& endpoint, int timeout_ms = 5000);

/// A decoded reply: either the payload lines or the ERR message.
struct Reply {
  std::vector<std::string> lines;
  std::optional<std::string> error;
};

/// Reads lines up to the blank terminator. A first line of "ERR ..." ends the
/// reply immediately. Throws Error(SourceUnreachable) if the stream ends early.
Reply read_reply(LineStream& stream);

std::string format_list_reply(const std::vector<std::string>& ids);
std::string format_record_reply(const std::map<std::string, std::string>& fields);
std::string format_error_reply(std::string_view message);

/// Splits "field\tvalue" at the first tab.
std::optional<std::pair<std::string, std::string>> split_field_line(std::string_view line);

}  // namespace mediacube::line
