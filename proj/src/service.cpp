#include "mediacube/service.hpp"

#include "httplib.h"

#include "mediacube/analytics.hpp"
#include "mediacube/cli.hpp"
#include "mediacube/codec.hpp"
#include "mediacube/error.hpp"
#include "mediacube/ingest.hpp"

namespace mediacube {

namespace {

constexpr const char* kJson = "application/json";

int status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::RecordNotFound:
    case ErrorCode::UnknownSource:
    case ErrorCode::NotFoundAtSource:
    case ErrorCode::UnknownContext:
      return 404;
    case ErrorCode::UnknownDocument:
    case ErrorCode::UnknownUser:
      return 409;
    case ErrorCode::SourceUnreachable:
      return 502;
    case ErrorCode::StorageIO:
      return 500;
    default:
      return 400;
  }
}

void send_error(httplib::Response& res, int status, std::string_view name, const std::string& detail) {
  res.status = status;
  codec::json body = {{"error", std::string(name)}, {"detail", detail}};
  res.set_content(body.dump(), kJson);
}

void send_json(httplib::Response& res, const codec::json& body, int status = 200) {
  res.status = status;
  res.set_content(body.dump(), kJson);
}

// Runs a handler, translating library errors into HTTP statuses.
template <class F>
void guarded(httplib::Response& res, F&& handler) {
  try {
    handler();
  } catch (const Error& e) {
    send_error(res, status_for(e.code()), e.name(), e.detail());
  } catch (const UsageError& e) {
    send_error(res, 400, "MalformedValue", e.what());
  } catch (const codec::json::exception& e) {
    send_error(res, 400, "MalformedValue", e.what());
  } catch (const std::exception& e) {
    send_error(res, 500, "Internal", e.what());
  }
}

}  // namespace

Service::Service(std::unique_ptr<CatalogStore> store, std::optional<std::filesystem::path> persist_to)
    : store_(std::move(store)), persist_to_(std::move(persist_to)),
      server_(std::make_unique<httplib::Server>()) {
  register_stored_sources(registry_, *store_);
  install_routes();
}

Service::~Service() { stop(); }

void Service::install_routes() {
  server_->Get(R"(/records/(.+))", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      DocumentCode code = parse_document_code(req.matches[1].str());
      send_json(res, codec::encode(store_->get_record(code)));
    });
  });

  server_->Get(R"(/resolve/(.+))", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      DocumentCode code = parse_document_code(req.matches[1].str());
      send_json(res, codec::encode(registry_.resolve(code)));
    });
  });

  server_->Get("/contexts", [this](const httplib::Request&, httplib::Response& res) {
    guarded(res, [&] {
      codec::json out = codec::json::array();
      for (const auto& c : store_->list_contexts()) out.push_back(codec::encode(c));
      send_json(res, out);
    });
  });

  server_->Get("/cube", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      CubeQuery q;
      for (const auto& [key, value] : req.params) {
        if (key == "granularity") {
          try {
            q.granularity = parse_granularity(value);
          } catch (const Error& e) {
            throw UsageError(e.what());
          }
        } else if (key == "format") {
          if (value != "json" && value != "tsv") throw UsageError("format must be json or tsv");
        } else {
          apply_fix(q.fixed, key, value);
        }
      }
      CubeResult result = cube_query(*store_->snapshot(), q);
      if (req.get_param_value("format") == "tsv") {
        res.set_content(format_tsv(result), "text/tab-separated-values");
      } else {
        send_json(res, codec::encode(result));
      }
    });
  });

  server_->Post("/usage", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      codec::json body = codec::json::parse(req.body);
      body.erase("event_id");
      UsageEvent e = codec::decode_event(body);
      std::lock_guard lock(write_mutex_);
      e.event_id = store_->record_usage(e);
      if (persist_to_) store_->save(*persist_to_);
      send_json(res, codec::encode(e), 201);
    });
  });
}

bool Service::listen(const std::string& host, int port) { return server_->listen(host, port); }

int Service::bind_any_port(const std::string& host) { return server_->bind_to_any_port(host); }

bool Service::listen_after_bind() { return server_->listen_after_bind(); }

void Service::stop() {
  if (server_) server_->stop();
}

void Service::wait_until_ready() const { server_->wait_until_ready(); }

}  // namespace mediacube
