#include "mediacube/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "mediacube/codec.hpp"
#include "mediacube/error.hpp"
#include "mediacube/ingest.hpp"
#include "mediacube/service.hpp"

namespace mediacube {

namespace fs = std::filesystem;

namespace {

constexpr const char* kTimeGrammar =
    "time value must be YYYY-MM-DD or YYYY-MM-DDThh:mm:ssZ/YYYY-MM-DDThh:mm:ssZ";

template <class F>
auto as_usage(F&& parse) -> decltype(parse()) {
  try {
    return parse();
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

}  // namespace

void apply_fix(DimensionFilter& filter, std::string_view dim_name, std::string_view value) {
  auto dim = parse_dimension(dim_name);
  if (!dim)
    throw UsageError("unknown dimension '" + std::string(dim_name) +
                     "' (expected doc, context, user or time)");
  if (filter.is_fixed(*dim)) throw UsageError("dimension '" + std::string(dim_name) + "' fixed twice");
  if (value.empty()) throw UsageError("empty value for dimension '" + std::string(dim_name) + "'");

  switch (*dim) {
    case Dimension::Document:
      filter.document = as_usage([&] { return parse_document_code(value); });
      break;
    case Dimension::Context:
      filter.context = std::string(value);
      break;
    case Dimension::User:
      filter.user = std::string(value);
      break;
    case Dimension::Time:
      try {
        filter.time = parse_time_filter(value);
      } catch (const Error& e) {
        throw UsageError(std::string(kTimeGrammar) + " (" + e.what() + ")");
      }
      break;
  }
}

void apply_fix(DimensionFilter& filter, std::string_view expr) {
  auto eq = expr.find('=');
  if (eq == std::string_view::npos)
    throw UsageError("--fix expects <dim>=<value>, got '" + std::string(expr) + "'");
  apply_fix(filter, expr.substr(0, eq), expr.substr(eq + 1));
}

namespace {

struct Options {
  std::string catalog;

  // source-register
  std::string source_id, kind, location, mapping_file;
  bool disabled = false;
  // ingest
  std::vector<std::string> ingest_sources;
  bool ingest_all = false;
  // record-get / resolve
  std::string code;
  // user-register
  std::string user_id, name, address, social_class;
  // usage-log
  std::string doc, context, user, time, use_type = "occasional";
  // cube / report
  std::vector<std::string> fixes;
  std::string granularity = "day";
  bool json = false;
  std::string report;
  std::string report_user;
  // save / load
  std::string path;
  // serve
  std::string host = "127.0.0.1";
  int port = 8080;
};

class Runner {
 public:
  Runner(const Options& opt, std::ostream& out, std::ostream& err) : opt_(opt), out_(out), err_(err) {}

  fs::path catalog_path() const {
    if (!opt_.catalog.empty()) return opt_.catalog;
    if (const char* env = std::getenv(kCatalogEnv); env && *env) return env;
    throw UsageError(std::string("no catalog: pass --catalog or set ") + kCatalogEnv);
  }

  std::unique_ptr<CatalogStore> open(bool allow_missing) const {
    fs::path path = catalog_path();
    std::error_code ec;
    if (allow_missing && !fs::exists(path, ec)) return std::make_unique<CatalogStore>();
    return CatalogStore::load(path);
  }

  int source_register() {
    auto kind = parse_source_kind(opt_.kind);
    if (!kind) throw UsageError("--kind must be tabular, file-tree or remote-line");
    std::ifstream in(opt_.mapping_file);
    if (!in) throw Error(ErrorCode::StorageIO, "cannot read mapping " + opt_.mapping_file);
    codec::json j;
    try {
      j = codec::json::parse(in);
    } catch (const codec::json::exception& e) {
      throw Error(ErrorCode::MalformedValue, opt_.mapping_file + ": " + e.what());
    }
    SourceDescriptor d{opt_.source_id, *kind, opt_.location, codec::decode_mapping(j), !opt_.disabled};

    auto store = open(true);
    SourceRegistry registry;
    register_stored_sources(registry, *store);
    out_ << registry.register_source(d) << "\n";
    store->put_source(std::move(d));
    store->save(catalog_path());
    return kExitOk;
  }

  int ingest_cmd() {
    if (opt_.ingest_all == !opt_.ingest_sources.empty())
      throw UsageError("ingest needs either --source <id> or --all");
    auto store = open(true);
    SourceRegistry registry;
    register_stored_sources(registry, *store);
    std::vector<std::string> ids = opt_.ingest_sources;
    if (opt_.ingest_all)
      for (const auto& d : registry.list())
        if (d.enabled) ids.push_back(d.source_id);

    out_ << "source\tingested\terrors\n";
    for (const auto& id : ids) {
      IngestReport report = ingest(registry, *store, id);
      out_ << id << "\t" << report.ingested.size() << "\t" << report.errors.size() << "\n";
      for (const auto& e : report.errors) err_ << "warning: " << id << ": " << e.where << ": " << e.message << "\n";
    }
    store->save(catalog_path());
    return kExitOk;
  }

  int record_get() {
    DocumentCode code = as_usage([&] { return parse_document_code(opt_.code); });
    auto store = open(false);
    out_ << codec::encode(store->get_record(code)).dump() << "\n";
    return kExitOk;
  }

  int resolve() {
    DocumentCode code = as_usage([&] { return parse_document_code(opt_.code); });
    auto store = open(false);
    SourceRegistry registry;
    register_stored_sources(registry, *store);
    out_ << codec::encode(registry.resolve(code)).dump() << "\n";
    return kExitOk;
  }

  int user_register() {
    UserProfile p{opt_.user_id, opt_.name, std::nullopt, std::nullopt};
    if (!opt_.address.empty()) p.address = opt_.address;
    if (!opt_.social_class.empty()) p.social_class = opt_.social_class;
    auto store = open(true);
    store->register_user(std::move(p));
    store->save(catalog_path());
    return kExitOk;
  }

  int usage_log() {
    UsageEvent e{0,
                 as_usage([&] { return parse_document_code(opt_.doc); }),
                 opt_.context,
                 opt_.user,
                 as_usage([&] { return parse_instant(opt_.time); }),
                 as_usage([&] { return parse_use_type(opt_.use_type); })};
    auto store = open(false);
    out_ << store->record_usage(std::move(e)) << "\n";
    store->save(catalog_path());
    return kExitOk;
  }

  int contexts() {
    auto store = open(false);
    out_ << "label\torigin\tfirst_seen\n";
    for (const auto& c : store->list_contexts())
      out_ << c.label << "\t" << context_origin_name(c.origin) << "\t" << format_instant(c.first_seen) << "\n";
    return kExitOk;
  }

  int cube() {
    CubeQuery q;
    for (const auto& fix : opt_.fixes) apply_fix(q.fixed, fix);
    q.granularity = as_usage([&] { return parse_granularity(opt_.granularity); });
    auto store = open(false);
    CubeResult result = cube_query(*store->snapshot(), q);
    if (opt_.json)
      out_ << codec::encode(result).dump() << "\n";
    else
      out_ << format_tsv(result);
    return kExitOk;
  }

  int report() {
    Granularity g = as_usage([&] { return parse_granularity(opt_.granularity); });
    const std::string& kind = opt_.report;
    if (kind == "interest" && opt_.report_user.empty()) throw UsageError("report interest needs --user");

    auto store = open(false);
    auto snap = store->snapshot();
    std::size_t total = 0;
    if (kind == "importance") {
      out_ << "doc\tcount\n";
      for (const auto& r : document_importance(*snap)) {
        out_ << r.code.text() << "\t" << r.count << "\n";
        total += r.count;
      }
    } else if (kind == "interest") {
      UserInterest ui = user_interest(*snap, opt_.report_user);
      out_ << "dimension\tvalue\tcount\n";
      for (const auto& [ctx, n] : ui.contexts) {
        out_ << "context\t" << ctx << "\t" << n << "\n";
        total += n;
      }
      for (const auto& [doc, n] : ui.documents) out_ << "doc\t" << doc << "\t" << n << "\n";
    } else if (kind == "evolution") {
      out_ << granularity_name(g) << "\tcount\n";
      for (const auto& b : usage_evolution(*snap, g)) {
        out_ << b.bucket << "\t" << b.count << "\n";
        total += b.count;
      }
    } else if (kind == "usage-type") {
      UsageTypeRatio r = usage_type_ratio(*snap);
      out_ << "use_type\tcount\nrepetitive\t" << r.repetitive << "\noccasional\t" << r.occasional << "\n";
      total = r.repetitive + r.occasional;
    } else if (kind == "social-class") {
      out_ << "social_class\tcontext\tcount\n";
      for (const auto& [key, n] : context_by_social_class(*snap)) {
        out_ << key.first << "\t" << key.second << "\t" << n << "\n";
        total += n;
      }
    }
    out_ << "TOTAL\t" << total << "\n";
    return kExitOk;
  }

  int save() {
    auto store = open(false);
    store->save(opt_.path);
    return kExitOk;
  }

  int load() {
    auto store = CatalogStore::load(opt_.path);
    store->save(catalog_path());
    return kExitOk;
  }

  int serve() {
    fs::path path = catalog_path();
    Service service(CatalogStore::load(path), path);
    err_ << "serving " << path.string() << " on http://" << opt_.host << ":" << opt_.port << "\n";
    err_.flush();
    if (!service.listen(opt_.host, opt_.port)) {
      err_ << "error: cannot listen on " << opt_.host << ":" << opt_.port << "\n";
      return kExitDomainError;
    }
    return kExitOk;
  }

 private:
  const Options& opt_;
  std::ostream& out_;
  std::ostream& err_;
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"mediacube: federated multimedia metadata catalog with usage analytics", "mediacube"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--catalog", opt.catalog, std::string("Catalog file (default: $") + kCatalogEnv + ")");

  auto* src = app.add_subcommand("source-register", "Register a federated source");
  src->add_option("--id", opt.source_id, "Source id [a-z0-9_-]{1,32}")->required();
  src->add_option("--kind", opt.kind, "tabular | file-tree | remote-line")->required();
  src->add_option("--location", opt.location, "Path, or tcp://host:port for remote-line")->required();
  src->add_option("--mapping", opt.mapping_file, "Field mapping JSON file")->required();
  src->add_flag("--disabled", opt.disabled, "Register without enabling harvest");

  auto* ing = app.add_subcommand("ingest", "Harvest sources into the generic database");
  ing->add_option("--source", opt.ingest_sources, "Source id (repeatable)");
  ing->add_flag("--all", opt.ingest_all, "Every enabled source");

  auto* rget = app.add_subcommand("record-get", "Print one generic record");
  rget->add_option("code", opt.code, "Document code")->required();

  auto* res = app.add_subcommand("resolve", "Fetch the full record from its origin source");
  res->add_option("code", opt.code, "Document code")->required();

  auto* ureg = app.add_subcommand("user-register", "Add or replace a user profile");
  ureg->add_option("--id", opt.user_id)->required();
  ureg->add_option("--name", opt.name)->required();
  ureg->add_option("--address", opt.address);
  ureg->add_option("--social-class", opt.social_class);

  auto* ulog = app.add_subcommand("usage-log", "Record one usage event");
  ulog->add_option("--doc", opt.doc)->required();
  ulog->add_option("--context", opt.context)->required();
  ulog->add_option("--user", opt.user)->required();
  ulog->add_option("--time", opt.time, "YYYY-MM-DDThh:mm:ssZ")->required();
  ulog->add_option("--use-type", opt.use_type, "repetitive | occasional")->capture_default_str();

  auto* ctx = app.add_subcommand("contexts", "List usage contexts");

  auto* cube = app.add_subcommand("cube", "Query the usage cube");
  cube->add_option("--fix", opt.fixes, "<dim>=<value>, dim in doc|context|user|time (repeatable)");
  cube->add_option("--granularity", opt.granularity, "day | month | year")->capture_default_str();
  cube->add_flag("--json", opt.json, "JSON instead of TSV");

  auto* rep = app.add_subcommand("report", "Derived usage reports");
  rep->add_option("kind", opt.report, "importance | interest | evolution | usage-type | social-class")
      ->required()
      ->check(CLI::IsMember({"importance", "interest", "evolution", "usage-type", "social-class"}));
  rep->add_option("--user", opt.report_user, "User for the interest report");
  rep->add_option("--granularity", opt.granularity, "day | month | year")->capture_default_str();

  auto* sv = app.add_subcommand("save", "Write the catalog to another file");
  sv->add_option("--out", opt.path)->required();

  auto* ld = app.add_subcommand("load", "Validate a catalog file and install it as the catalog");
  ld->add_option("--from", opt.path)->required();

  auto* srv = app.add_subcommand("serve", "Run the HTTP query service");
  srv->add_option("--host", opt.host)->capture_default_str();
  srv->add_option("--port", opt.port)->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e, out, err);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  Runner run(opt, out, err);
  try {
    if (*src) return run.source_register();
    if (*ing) return run.ingest_cmd();
    if (*rget) return run.record_get();
    if (*res) return run.resolve();
    if (*ureg) return run.user_register();
    if (*ulog) return run.usage_log();
    if (*ctx) return run.contexts();
    if (*cube) return run.cube();
    if (*rep) return run.report();
    if (*sv) return run.save();
    if (*ld) return run.load();
    if (*srv) return run.serve();
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\nRun with --help for usage.\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomainError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomainError;
  }
  err << app.help();
  return kExitUsage;
}

}  // namespace mediacube
