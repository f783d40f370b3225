#include "mediacube/line_protocol.hpp"

#include <netdb.h>
#include <sys/socket.h>
#include <sys/time.h>
#include <unistd.h>

#include <cerrno>
#include <charconv>
#include <system_error>
#include <utility>

#include "mediacube/error.hpp"

namespace mediacube::line {

LineStream::LineStream(LineStream&& other) noexcept
    : fd_(std::exchange(other.fd_, -1)), buffer_(std::move(other.buffer_)) {}

LineStream& LineStream::operator=(LineStream&& other) noexcept {
  if (this != &other) {
    if (fd_ >= 0) ::close(fd_);
    fd_ = std::exchange(other.fd_, -1);
    buffer_ = std::move(other.buffer_);
  }
  return *this;
}

LineStream::~LineStream() {
  if (fd_ >= 0) ::close(fd_);
}

std::optional<std::string> LineStream::read_line() {
  for (;;) {
    auto nl = buffer_.find('\n');
    if (nl != std::string::npos) {
      std::string out = buffer_.substr(0, nl);
      buffer_.erase(0, nl + 1);
      if (!out.empty() && out.back() == '\r') out.pop_back();
      return out;
    }
    char chunk[4096];
    ssize_t n = ::recv(fd_, chunk, sizeof chunk, 0);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw std::system_error(errno, std::generic_category(), "recv");
    }
    if (n == 0) {
      if (buffer_.empty()) return std::nullopt;
      return std::exchange(buffer_, {});
    }
    buffer_.append(chunk, static_cast<std::size_t>(n));
  }
}

void LineStream::write(std::string_view data) {
  while (!data.empty()) {
    ssize_t n = ::send(fd_, data.data(), data.size(), MSG_NOSIGNAL);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw std::system_error(errno, std::generic_category(), "send");
    }
    data.remove_prefix(static_cast<std::size_t>(n));
  }
}

std::optional<Endpoint> parse_endpoint(std::string_view location) {
  constexpr std::string_view kScheme = "tcp://";
  if (location.substr(0, kScheme.size()) != kScheme) return std::nullopt;
  location.remove_prefix(kScheme.size());
  auto colon = location.rfind(':');
  if (colon == std::string_view::npos || colon == 0) return std::nullopt;
  auto port_text = location.substr(colon + 1);
  unsigned port = 0;
  auto [end, ec] = std::from_chars(port_text.data(), port_text.data() + port_text.size(), port);
  if (ec != std::errc{} || end != port_text.data() + port_text.size() || port == 0 || port > 65535)
    return std::nullopt;
  return Endpoint{std::string(location.substr(0, colon)), static_cast<std::uint16_t>(port)};
}

LineStream connect(const Endpoint& endpoint, int timeout_ms) {
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* found = nullptr;
  std::string port = std::to_string(endpoint.port);
  if (int rc = ::getaddrinfo(endpoint.host.c_str(), port.c_str(), &hints, &found); rc != 0)
    throw Error(ErrorCode::SourceUnreachable, endpoint.host + ": " + ::gai_strerror(rc));

  std::string last_error = "no address";
  for (addrinfo* ai = found; ai; ai = ai->ai_next) {
    int fd = ::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol);
    if (fd < 0) continue;
    timeval tv{timeout_ms / 1000, (timeout_ms % 1000) * 1000};
    ::setsockopt(fd, SOL_SOCKET, SO_RCVTIMEO, &tv, sizeof tv);
    ::setsockopt(fd, SOL_SOCKET, SO_SNDTIMEO, &tv, sizeof tv);
    if (::connect(fd, ai->ai_addr, ai->ai_addrlen) == 0) {
      ::freeaddrinfo(found);
      return LineStream(fd);
    }
    last_error = std::generic_category().message(errno);
    ::close(fd);
  }
  ::freeaddrinfo(found);
  throw Error(ErrorCode::SourceUnreachable,
              endpoint.host + ":" + port + ": " + last_error);
}

Reply read_reply(LineStream& stream) {
  Reply reply;
  for (bool first = true;; first = false) {
    std::optional<std::string> line;
    try {
      line = stream.read_line();
    } catch (const std::system_error& e) {
      throw Error(ErrorCode::SourceUnreachable, e.what());
    }
    if (!line) throw Error(ErrorCode::SourceUnreachable, "connection closed mid-reply");
    if (first && line->rfind("ERR", 0) == 0) {
      reply.error = line->size() > 4 ? line->substr(4) : std::string{};
      return reply;
    }
    if (line->empty()) return reply;
    reply.lines.push_back(std::move(*line));
  }
}

std::string format_list_reply(const std::vector<std::string>& ids) {
  std::string out;
  for (const auto& id : ids) out += id + "\n";
  out += "\n";
  return out;
}

std::string format_record_reply(const std::map<std::string, std::string>& fields) {
  std::string out;
  for (const auto& [k, v] : fields) out += k + "\t" + v + "\n";
  out += "\n";
  return out;
}

std::string format_error_reply(std::string_view message) {
  return "ERR " + std::string(message) + "\n";
}

std::optional<std::pair<std::string, std::string>> split_field_line(std::string_view line) {
  auto tab = line.find('\t');
  if (tab == std::string_view::npos || tab == 0) return std::nullopt;
  return std::pair{std::string(line.substr(0, tab)), std::string(line.substr(tab + 1))};
}

}  // namespace mediacube::line
