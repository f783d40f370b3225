#include "doctest.h"

#include <fstream>
#include <sstream>
#include <thread>

#include "httplib.h"
#include "json.hpp"
#include "mediacube/cli.hpp"
#include "mediacube/codec.hpp"
#include "mediacube/service.hpp"
#include "support/fixtures.hpp"
#include "support/mock_sources.hpp"

using namespace mediacube;
using namespace mediacube::testing;
using nlohmann::json;

namespace {

struct CliRun {
  int status;
  std::string out;
  std::string err;
};

CliRun cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int status = run_cli(args, out, err);
  return {status, out.str(), err.str()};
}

struct FixtureCatalog {
  TempDir dir;
  std::string path = (dir / "catalog.jsonl").string();
  FixtureCatalog() { fixture_store()->save(path); }
};

class RunningService {
 public:
  explicit RunningService(std::unique_ptr<CatalogStore> store,
                          std::optional<fs::path> persist = std::nullopt)
      : service_(std::move(store), std::move(persist)) {
    port_ = service_.bind_any_port("127.0.0.1");
    thread_ = std::thread([this] { service_.listen_after_bind(); });
    service_.wait_until_ready();
  }
  ~RunningService() {
    service_.stop();
    thread_.join();
  }
  httplib::Client client() const { return httplib::Client("127.0.0.1", port_); }
  const Service& service() const { return service_; }

 private:
  Service service_;
  int port_ = 0;
  std::thread thread_;
};

}  // namespace

TEST_CASE("apply_fix parses dimension=value") {
  DimensionFilter f;
  apply_fix(f, "doc=fx:d1");
  apply_fix(f, "context=teaching");
  apply_fix(f, "user=u1");
  apply_fix(f, "time=2024-01-02");
  CHECK(f.document->text() == "fx:d1");
  CHECK(*f.context == "teaching");
  CHECK(std::get<Date>(*f.time) == Date(2024, 1, 2));
  CHECK_THROWS_AS(apply_fix(f, "time=2024-13-01"), UsageError);
  CHECK_THROWS_AS(apply_fix(f, "colour=red"), UsageError);
  CHECK_THROWS_AS(apply_fix(f, "doc"), UsageError);
  CHECK_THROWS_AS(apply_fix(f, "doc=not a code"), UsageError);
}

TEST_CASE("cli: cube on the fixture") {
  FixtureCatalog cat;
  CliRun r = cli({"--catalog", cat.path, "cube", "--fix", "context=teaching"});
  CHECK(r.status == kExitOk);
  CHECK(r.out ==
        "doc\tuser\ttime\tcount\n"
        "fx:d1\tu1\t2024-01-01\t1\n"
        "fx:d1\tu1\t2024-01-02\t1\n"
        "fx:d2\tu1\t2024-01-02\t1\n"
        "TOTAL\t3\n");

  CliRun j = cli({"--catalog", cat.path, "cube", "--fix", "context=teaching", "--json"});
  CHECK(j.status == kExitOk);
  json body = json::parse(j.out);
  CHECK(body["pattern"] == 5);
  CHECK(body["total"] == 3);
}

TEST_CASE("cli: exit codes") {
  FixtureCatalog cat;
  CliRun bad_date = cli({"--catalog", cat.path, "cube", "--fix", "time=2024-13-01"});
  CHECK(bad_date.status == kExitUsage);
  CHECK(bad_date.err.find("YYYY-MM-DD") != std::string::npos);

  CliRun unknown_source = cli({"--catalog", cat.path, "resolve", "s99:x"});
  CHECK(unknown_source.status == kExitDomainError);
  CHECK(unknown_source.err.find("UnknownSource") != std::string::npos);

  CHECK(cli({"--catalog", cat.path, "record-get", "fx:zz"}).status == kExitDomainError);
  CHECK(cli({"--catalog", cat.path, "no-such-command"}).status == kExitUsage);
  CHECK(cli({"--catalog", cat.path, "cube", "--fix", "context=gardening"}).status == kExitDomainError);
  CHECK(cli({"--catalog", cat.path, "usage-log", "--doc", "fx:d1", "--context", "x", "--user", "u1",
             "--time", "yesterday"})
            .status == kExitUsage);
}

TEST_CASE("cli: usage logging, contexts and reports") {
  FixtureCatalog cat;
  CliRun logged = cli({"--catalog", cat.path, "usage-log", "--doc", "fx:d2", "--context", "museum-visit",
                       "--user", "u2", "--time", "2024-02-10T12:00:00Z", "--use-type", "repetitive"});
  CHECK(logged.status == kExitOk);
  CHECK(logged.out == "6\n");

  CliRun ctx = cli({"--catalog", cat.path, "contexts"});
  CHECK(ctx.status == kExitOk);
  CHECK(ctx.out.find("museum-visit\tdynamic") != std::string::npos);

  CliRun imp = cli({"--catalog", cat.path, "report", "importance"});
  CHECK(imp.status == kExitOk);
  CHECK(imp.out.find("fx:d1\t3\n") != std::string::npos);
  CHECK(imp.out.find("fx:d2\t3\n") != std::string::npos);
  CHECK(imp.out.find("TOTAL\t6\n") != std::string::npos);

  CliRun ratio = cli({"--catalog", cat.path, "report", "usage-type"});
  CHECK(ratio.out.find("repetitive\t1") != std::string::npos);
  CHECK(cli({"--catalog", cat.path, "report", "interest"}).status == kExitUsage);
  CHECK(cli({"--catalog", cat.path, "report", "interest", "--user", "u1"}).status == kExitOk);
}

TEST_CASE("cli: register, ingest, resolve, save and load") {
  TempDir dir;
  std::string catalog = (dir / "catalog.jsonl").string();
  write_lib(dir / "lib.tsv", 6, 2);
  std::ofstream(dir / "lib.json") << codec::encode(lib_mapping()).dump(2);

  CHECK(cli({"--catalog", catalog, "source-register", "--id", "lib", "--kind", "tabular", "--location",
             (dir / "lib.tsv").string(), "--mapping", (dir / "lib.json").string()})
            .status == kExitOk);
  CliRun ing = cli({"--catalog", catalog, "ingest", "--all"});
  CHECK(ing.status == kExitOk);
  CHECK(ing.out.find("lib\t5\t1") != std::string::npos);

  CliRun rec = cli({"--catalog", catalog, "record-get", "lib:b000"});
  CHECK(rec.status == kExitOk);
  CHECK(json::parse(rec.out)["media_class"] == "text-image");

  CliRun res = cli({"--catalog", catalog, "resolve", "lib:b001"});
  CHECK(res.status == kExitOk);
  CHECK(res.out.find("Title 1") != std::string::npos);

  std::string copy = (dir / "copy.jsonl").string();
  CHECK(cli({"--catalog", catalog, "save", "--out", copy}).status == kExitOk);
  std::string other = (dir / "other.jsonl").string();
  CHECK(cli({"--catalog", other, "load", "--from", copy}).status == kExitOk);
  CHECK(cli({"--catalog", other, "record-get", "lib:b000"}).status == kExitOk);

  std::ofstream(dir / "broken.jsonl") << "{\"kind\":";
  CliRun broken = cli({"--catalog", other, "load", "--from", (dir / "broken.jsonl").string()});
  CHECK(broken.status == kExitDomainError);
  CHECK(broken.err.find("CorruptCatalog") != std::string::npos);
}

TEST_CASE("service: cube matches the cli") {
  FixtureCatalog cat;
  RunningService svc(CatalogStore::load(cat.path));
  auto client = svc.client();

  auto res = client.Get("/cube?context=teaching&format=tsv");
  REQUIRE(res);
  CHECK(res->status == 200);
  CHECK(res->body == cli({"--catalog", cat.path, "cube", "--fix", "context=teaching"}).out);

  auto js = client.Get("/cube?context=teaching");
  REQUIRE(js);
  CHECK(json::parse(js->body) ==
        json::parse(cli({"--catalog", cat.path, "cube", "--fix", "context=teaching", "--json"}).out));
}

TEST_CASE("service: records, contexts, errors and usage") {
  TempDir dir;
  fs::path persist = dir / "catalog.jsonl";
  RunningService svc(fixture_store(), persist);
  auto client = svc.client();

  auto rec = client.Get("/records/fx:d2");
  REQUIRE(rec);
  CHECK(rec->status == 200);
  CHECK(json::parse(rec->body)["media_class"] == "image-sound");

  auto missing = client.Get("/records/fx:zz");
  REQUIRE(missing);
  CHECK(missing->status == 404);
  CHECK(json::parse(missing->body)["error"] == "RecordNotFound");

  auto bad = client.Get("/cube?time=2024-13-01");
  REQUIRE(bad);
  CHECK(bad->status == 400);

  auto ctx = client.Get("/contexts");
  REQUIRE(ctx);
  CHECK(json::parse(ctx->body).size() == 4);

  json event = {{"document_code", "fx:d1"}, {"context", "museum-visit"}, {"user_id", "u1"},
                {"timestamp", "2024-03-01T10:00:00Z"}, {"use_type", "occasional"}};
  auto posted = client.Post("/usage", event.dump(), "application/json");
  REQUIRE(posted);
  CHECK(posted->status == 201);
  CHECK(json::parse(posted->body)["event_id"] == 6);
  CHECK(CatalogStore::load(persist)->snapshot()->events.size() == 6);

  event["user_id"] = "ghost";
  auto rejected = client.Post("/usage", event.dump(), "application/json");
  REQUIRE(rejected);
  CHECK(rejected->status == 409);
  CHECK(svc.service().store().snapshot()->events.size() == 6);
}
