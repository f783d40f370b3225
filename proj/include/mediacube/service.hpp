#pragma once

#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "mediacube/catalog_store.hpp"
#include "mediacube/federation.hpp"

namespace httplib {
class Server;
}

namespace mediacube {

/// HTTP/1.1 front end over one catalog.
///
///   GET  /records/{code}   generic record
///   GET  /resolve/{code}   full source record
///   POST /usage            log one event (the only mutating endpoint)
///   GET  /cube             doc, context, user, time, granularity, format=tsv
///   GET  /contexts         context registry
///
/// 404 not found, 400 malformed input, 409 referential-integrity failure.
/// When a catalog path is given, every accepted POST /usage is persisted.
class Service {
 public:
  Service(std::unique_ptr<CatalogStore> store, std::optional<std::filesystem::path> persist_to);
  ~Service();

  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  /// Binds and serves until stop(). Returns false if the port cannot be bound.
  bool listen(const std::string& host, int port);
  /// Binds an ephemeral port and returns it (-1 on failure); call
  /// listen_after_bind() to serve.
  int bind_any_port(const std::string& host);
  bool listen_after_bind();
  void stop();
  void wait_until_ready() const;

  const CatalogStore& store() const noexcept { return *store_; }

 private:
  void install_routes();

  std::unique_ptr<CatalogStore> store_;
  SourceRegistry registry_;
  std::optional<std::filesystem::path> persist_to_;
  std::mutex write_mutex_;
  std::unique_ptr<httplib::Server> server_;
};

}  // namespace mediacube
