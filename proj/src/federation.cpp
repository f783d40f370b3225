#include "mediacube/federation.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <set>
#include <system_error>

#include "mediacube/error.hpp"
#include "mediacube/line_protocol.hpp"

namespace mediacube {

namespace fs = std::filesystem;

// ---------------------------------------------------------------------------
// Transforms

std::string_view transform_name(Transform t) noexcept {
  switch (t) {
    case Transform::Identity: return "identity";
    case Transform::Lowercase: return "lowercase";
    case Transform::DateParse: return "date-parse";
    case Transform::SplitList: return "split-list";
  }
  return "identity";
}

std::optional<Transform> parse_transform(std::string_view token) noexcept {
  for (Transform t :
       {Transform::Identity, Transform::Lowercase, Transform::DateParse, Transform::SplitList})
    if (transform_name(t) == token) return t;
  return std::nullopt;
}

namespace {

std::string_view trim(std::string_view s) noexcept {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string to_lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool all_digits(std::string_view s) noexcept {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

std::optional<Date> make_date(std::string_view y, std::string_view m, std::string_view d) {
  if (!all_digits(y) || !all_digits(m) || !all_digits(d)) return std::nullopt;
  try {
    return Date(std::stoi(std::string(y)), static_cast<unsigned>(std::stoul(std::string(m))),
                static_cast<unsigned>(std::stoul(std::string(d))));
  } catch (const Error&) {
    return std::nullopt;
  }
}

}  // namespace

std::optional<Date> parse_loose_date(std::string_view raw) {
  auto s = trim(raw);
  if (s.size() == 20 && s[10] == 'T') s = s.substr(0, 10);
  if (s.size() == 10 && (s[4] == '-' || s[4] == '/') && s[7] == s[4])
    return make_date(s.substr(0, 4), s.substr(5, 2), s.substr(8, 2));
  if (s.size() == 10 && s[2] == '.' && s[5] == '.')
    return make_date(s.substr(6, 4), s.substr(3, 2), s.substr(0, 2));
  if (s.size() == 8 && all_digits(s)) return make_date(s.substr(0, 4), s.substr(4, 2), s.substr(6, 2));
  return std::nullopt;
}

FieldValue apply_transform(Transform t, const FieldSpec& target, std::string_view raw) {
  bool is_list = target.kind == FieldKind::LabelList || target.kind == FieldKind::CodeList;
  switch (t) {
    case Transform::Identity:
      if (is_list) return std::vector<std::string>{std::string(raw)};
      return std::string(raw);
    case Transform::Lowercase:
      if (is_list) return std::vector<std::string>{to_lower(raw)};
      return to_lower(raw);
    case Transform::DateParse: {
      auto d = parse_loose_date(raw);
      if (!d)
        throw Error(ErrorCode::TransformFailed,
                    std::string(target.path) + ": cannot read date '" + std::string(raw) + "'");
      return format_date(*d);
    }
    case Transform::SplitList: {
      std::vector<std::string> items;
      std::string_view rest = raw;
      for (;;) {
        auto sep = rest.find(';');
        auto item = trim(rest.substr(0, sep));
        if (!item.empty()) items.emplace_back(item);
        if (sep == std::string_view::npos) break;
        rest.remove_prefix(sep + 1);
      }
      return items;
    }
  }
  return std::string(raw);
}

// ---------------------------------------------------------------------------
// Mapping validation

namespace {

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorCode::InvalidMapping, what); }

bool is_list_kind(FieldKind k) noexcept {
  return k == FieldKind::LabelList || k == FieldKind::CodeList;
}

FieldValue default_value(const FieldSpec& f, const std::string& text) {
  return apply_transform(is_list_kind(f.kind) ? Transform::SplitList : Transform::Identity, f, text);
}

}  // namespace

void validate_mapping(const FieldMapping& m) {
  if (m.presence_rules.empty()) invalid("no presence rules");
  MediaPresence declared;
  for (const auto& rule : m.presence_rules) {
    if (rule.field.empty()) invalid("presence rule for " + std::string(medium_name(rule.medium)) + " names no field");
    switch (rule.medium) {
      case Medium::Text: declared.text = true; break;
      case Medium::Image: declared.image = true; break;
      case Medium::Sound: declared.sound = true; break;
    }
  }

  std::set<std::string> covered;
  for (const auto& rule : m.field_rules) {
    const FieldSpec* f = find_field(rule.target);
    if (!f) invalid(rule.target);
    if (rule.source_field.empty()) invalid(rule.target + ": empty source field");
    if (!covered.insert(rule.target).second) invalid(rule.target + ": targeted twice");
    if (rule.transform == Transform::SplitList && !is_list_kind(f->kind))
      invalid(rule.target + ": split-list on a scalar field");
    if (rule.transform == Transform::DateParse && f->kind != FieldKind::Date)
      invalid(rule.target + ": date-parse on a non-date field");
  }

  for (const auto& [path, value] : m.defaults) {
    const FieldSpec* f = find_field(path);
    if (!f) invalid(path);
    if (f->kind == FieldKind::Date && !parse_loose_date(value))
      invalid(path + ": default is not a date");
    covered.insert(path);
  }

  if (m.uri_field && m.uri_field->empty()) invalid("uri_field is empty");
  if (m.id_field.empty()) invalid("id_field is empty");

  for (const FieldSpec& f : generic_schema()) {
    if (f.required && declared.has(f.medium) && !covered.count(std::string(f.path)))
      invalid(std::string(f.path) + ": required field has no rule or default");
  }
}

// ---------------------------------------------------------------------------
// map_to_generic

GenericRecord map_to_generic(const SourceRecord& raw, const FieldMapping& m,
                             const VocabularySet& vocabularies) {
  auto value_of = [&](const std::string& field) -> std::optional<std::string_view> {
    auto it = raw.raw_fields.find(field);
    if (it == raw.raw_fields.end() || it->second.empty()) return std::nullopt;
    return std::string_view(it->second);
  };

  MediaPresence presence;
  for (const auto& rule : m.presence_rules) {
    auto v = value_of(rule.field);
    bool hit = v && (!rule.equals || *v == *rule.equals);
    if (!hit) continue;
    switch (rule.medium) {
      case Medium::Text: presence.text = true; break;
      case Medium::Image: presence.image = true; break;
      case Medium::Sound: presence.sound = true; break;
    }
  }
  if (!presence.any())
    throw Error(ErrorCode::PresenceUndecidable,
                raw.source_id + ":" + raw.local_id + ": no medium evidenced");

  std::optional<DocumentCode> code;
  if (m.uri_field) {
    if (auto v = value_of(*m.uri_field)) code = DocumentCode::uri(std::string(*v));
  }
  if (!code) code = DocumentCode::compound(raw.source_id, raw.local_id);

  GenericRecord record = make_record(
      std::move(*code), presence.text ? std::optional<TextDescriptor>(TextDescriptor{}) : std::nullopt,
      presence.image ? std::optional<ImageDescriptor>(ImageDescriptor{}) : std::nullopt,
      presence.sound ? std::optional<SoundDescriptor>(SoundDescriptor{}) : std::nullopt);

  std::set<std::string_view> assigned;
  auto assign = [&](const FieldSpec& f, const FieldValue& v) {
    try {
      assign_field(record, f, v);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::TransformFailed) throw;
      throw Error(ErrorCode::TransformFailed, std::string(f.path) + ": " + e.detail());
    }
    assigned.insert(f.path);
  };

  for (const auto& rule : m.field_rules) {
    const FieldSpec* f = find_field(rule.target);
    if (!f) throw Error(ErrorCode::InvalidMapping, rule.target);
    if (!presence.has(f->medium)) continue;
    auto v = value_of(rule.source_field);
    if (!v) continue;
    assign(*f, apply_transform(rule.transform, *f, *v));
  }

  for (const auto& [path, text] : m.defaults) {
    const FieldSpec* f = find_field(path);
    if (!f) throw Error(ErrorCode::InvalidMapping, path);
    if (!presence.has(f->medium) || assigned.count(f->path)) continue;
    FieldValue v = f->kind == FieldKind::Date
                       ? apply_transform(Transform::DateParse, *f, text)
                       : default_value(*f, text);
    assign(*f, v);
  }

  for (const FieldSpec& f : generic_schema()) {
    if (f.required && presence.has(f.medium) && !assigned.count(f.path))
      throw Error(ErrorCode::RequiredFieldMissing, std::string(f.path));
  }

  ValidationReport report = validate_record(record, vocabularies);
  if (!report.ok()) {
    const Finding& first = report.violations.front();
    throw Error(ErrorCode::RecordInvalid,
                record.document_code.text() + ": " + first.path + ": " + first.message);
  }
  return record;
}

// ---------------------------------------------------------------------------
// Adapters

std::string_view source_kind_name(SourceKind k) noexcept {
  switch (k) {
    case SourceKind::Tabular: return "tabular";
    case SourceKind::FileTree: return "file-tree";
    case SourceKind::RemoteLine: return "remote-line";
  }
  return "tabular";
}

std::optional<SourceKind> parse_source_kind(std::string_view token) noexcept {
  for (SourceKind k : {SourceKind::Tabular, SourceKind::FileTree, SourceKind::RemoteLine})
    if (source_kind_name(k) == token) return k;
  return std::nullopt;
}

namespace {

fs::path local_path(std::string_view location) {
  constexpr std::string_view kFile = "file://";
  if (location.substr(0, kFile.size()) == kFile) location.remove_prefix(kFile.size());
  return fs::path(std::string(location));
}

std::vector<std::string> split_tabs(std::string_view line) {
  std::vector<std::string> out;
  for (;;) {
    auto tab = line.find('\t');
    out.emplace_back(line.substr(0, tab));
    if (tab == std::string_view::npos) break;
    line.remove_prefix(tab + 1);
  }
  return out;
}

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

void sort_records(std::vector<SourceRecord>& records) {
  std::sort(records.begin(), records.end(),
            [](const SourceRecord& a, const SourceRecord& b) { return a.local_id < b.local_id; });
}

// Header line of field paths, then one tab-separated row per document.
class TabularAdapter final : public SourceAdapter {
 public:
  explicit TabularAdapter(const SourceDescriptor& d)
      : source_id_(d.source_id), path_(local_path(d.location)), id_field_(d.mapping.id_field) {}

  HarvestResult harvest() override {
    std::ifstream in(path_);
    if (!in) throw Error(ErrorCode::SourceUnreachable, "cannot open " + path_.string());

    std::string line;
    if (!std::getline(in, line))
      throw Error(ErrorCode::SourceUnreachable, path_.string() + ": missing header row");
    strip_cr(line);
    if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
    std::vector<std::string> header = split_tabs(line);
    std::set<std::string> seen_columns;
    for (const auto& h : header)
      if (h.empty() || !seen_columns.insert(h).second)
        throw Error(ErrorCode::SourceUnreachable, path_.string() + ": malformed header row");
    auto id_col = std::find(header.begin(), header.end(), id_field_);
    if (id_col == header.end())
      throw Error(ErrorCode::SourceUnreachable,
                  path_.string() + ": header lacks id column '" + id_field_ + "'");
    std::size_t id_index = static_cast<std::size_t>(id_col - header.begin());

    HarvestResult result;
    std::set<std::string> seen_ids;
    for (std::size_t line_no = 2; std::getline(in, line); ++line_no) {
      strip_cr(line);
      if (line.empty()) continue;
      std::string where = "line " + std::to_string(line_no);
      auto cells = split_tabs(line);
      if (cells.size() != header.size()) {
        result.errors.push_back({where, "expected " + std::to_string(header.size()) +
                                            " fields, found " + std::to_string(cells.size())});
        continue;
      }
      const std::string& id = cells[id_index];
      if (id.empty()) {
        result.errors.push_back({where, "empty id"});
        continue;
      }
      if (!seen_ids.insert(id).second) {
        result.errors.push_back({id, where + ": duplicate id"});
        continue;
      }
      SourceRecord rec{source_id_, id, {}};
      for (std::size_t i = 0; i < header.size(); ++i) rec.raw_fields.emplace(header[i], cells[i]);
      result.records.push_back(std::move(rec));
    }
    sort_records(result.records);
    return result;
  }

  SourceRecord fetch(const std::string& local_id) override {
    HarvestResult all = harvest();
    for (auto& r : all.records)
      if (r.local_id == local_id) return std::move(r);
    throw Error(ErrorCode::NotFoundAtSource, source_id_ + ":" + local_id);
  }

 private:
  std::string source_id_;
  fs::path path_;
  std::string id_field_;
};

// One "<local_id>.meta" file per document, "field\tvalue" per line.
class FileTreeAdapter final : public SourceAdapter {
 public:
  explicit FileTreeAdapter(const SourceDescriptor& d)
      : source_id_(d.source_id), root_(local_path(d.location)) {}

  HarvestResult harvest() override {
    std::error_code ec;
    if (!fs::is_directory(root_, ec))
      throw Error(ErrorCode::SourceUnreachable, root_.string() + " is not a readable directory");

    std::vector<fs::path> files;
    fs::directory_iterator it(root_, ec);
    if (ec) throw Error(ErrorCode::SourceUnreachable, root_.string() + ": " + ec.message());
    for (const auto& entry : it)
      if (entry.is_regular_file() && entry.path().extension() == kExtension)
        files.push_back(entry.path());

    HarvestResult result;
    for (const auto& file : files) {
      std::string id = file.stem().string();
      try {
        result.records.push_back(read(file, id));
      } catch (const Error& e) {
        result.errors.push_back({id, e.detail()});
      }
    }
    sort_records(result.records);
    std::sort(result.errors.begin(), result.errors.end(),
              [](const RecordError& a, const RecordError& b) { return a.where < b.where; });
    return result;
  }

  SourceRecord fetch(const std::string& local_id) override {
    std::error_code ec;
    if (!fs::is_directory(root_, ec))
      throw Error(ErrorCode::SourceUnreachable, root_.string() + " is not a readable directory");
    if (local_id.empty() || local_id == "." || local_id == ".." ||
        local_id.find('/') != std::string::npos)
      throw Error(ErrorCode::NotFoundAtSource, source_id_ + ":" + local_id);
    fs::path file = root_ / (local_id + std::string(kExtension));
    if (!fs::is_regular_file(file, ec))
      throw Error(ErrorCode::NotFoundAtSource, source_id_ + ":" + local_id);
    return read(file, local_id);
  }

 private:
  static constexpr std::string_view kExtension = ".meta";

  SourceRecord read(const fs::path& file, const std::string& id) const {
    std::ifstream in(file);
    if (!in) throw Error(ErrorCode::SourceUnreachable, "cannot open " + file.string());
    SourceRecord rec{source_id_, id, {}};
    std::string line;
    for (std::size_t line_no = 1; std::getline(in, line); ++line_no) {
      strip_cr(line);
      if (line.empty()) continue;
      auto kv = line::split_field_line(line);
      if (!kv)
        throw Error(ErrorCode::MalformedValue,
                    "line " + std::to_string(line_no) + ": expected field<TAB>value");
      if (!rec.raw_fields.emplace(kv->first, kv->second).second)
        throw Error(ErrorCode::MalformedValue,
                    "line " + std::to_string(line_no) + ": repeated field " + kv->first);
    }
    return rec;
  }

  std::string source_id_;
  fs::path root_;
};

class RemoteLineAdapter final : public SourceAdapter {
 public:
  explicit RemoteLineAdapter(const SourceDescriptor& d) : source_id_(d.source_id) {
    auto ep = line::parse_endpoint(d.location);
    if (!ep) throw Error(ErrorCode::SourceUnreachable, "bad endpoint " + d.location);
    endpoint_ = *ep;
  }

  HarvestResult harvest() override {
    line::LineStream stream = line::connect(endpoint_);
    send(stream, "LIST\n");
    line::Reply listing = line::read_reply(stream);
    if (listing.error) throw Error(ErrorCode::SourceUnreachable, "LIST refused: " + *listing.error);

    std::vector<std::string> ids = listing.lines;
    std::sort(ids.begin(), ids.end());

    HarvestResult result;
    for (std::size_t i = 0; i < ids.size(); ++i) {
      if (i > 0 && ids[i] == ids[i - 1]) {
        result.errors.push_back({ids[i], "listed twice"});
        continue;
      }
      try {
        result.records.push_back(get(stream, ids[i]));
      } catch (const Error& e) {
        if (e.code() == ErrorCode::SourceUnreachable) throw;
        result.errors.push_back({ids[i], e.detail()});
      }
    }
    return result;
  }

  SourceRecord fetch(const std::string& local_id) override {
    line::LineStream stream = line::connect(endpoint_);
    return get(stream, local_id);
  }

 private:
  static void send(line::LineStream& stream, std::string_view request) {
    try {
      stream.write(request);
    } catch (const std::system_error& e) {
      throw Error(ErrorCode::SourceUnreachable, e.what());
    }
  }

  SourceRecord get(line::LineStream& stream, const std::string& id) const {
    if (id.find('\n') != std::string::npos || id.find('\r') != std::string::npos)
      throw Error(ErrorCode::NotFoundAtSource, source_id_ + ":" + id);
    send(stream, "GET " + id + "\n");
    line::Reply reply = line::read_reply(stream);
    if (reply.error) throw Error(ErrorCode::NotFoundAtSource, source_id_ + ":" + id + ": " + *reply.error);
    SourceRecord rec{source_id_, id, {}};
    for (const auto& l : reply.lines) {
      auto kv = line::split_field_line(l);
      if (!kv) throw Error(ErrorCode::MalformedValue, "malformed field line '" + l + "'");
      if (!rec.raw_fields.emplace(kv->first, kv->second).second)
        throw Error(ErrorCode::MalformedValue, "repeated field " + kv->first);
    }
    return rec;
  }

  std::string source_id_;
  line::Endpoint endpoint_;
};

}  // namespace

std::unique_ptr<SourceAdapter> make_adapter(const SourceDescriptor& d) {
  switch (d.kind) {
    case SourceKind::Tabular: return std::make_unique<TabularAdapter>(d);
    case SourceKind::FileTree: return std::make_unique<FileTreeAdapter>(d);
    case SourceKind::RemoteLine: return std::make_unique<RemoteLineAdapter>(d);
  }
  throw Error(ErrorCode::MalformedValue, "unknown source kind");
}

// ---------------------------------------------------------------------------
// Registry

std::string SourceRegistry::register_source(SourceDescriptor d) {
  if (!is_valid_source_id(d.source_id))
    throw Error(ErrorCode::MalformedValue, "source id '" + d.source_id + "' must match [a-z0-9_-]{1,32}");
  if (d.location.empty()) throw Error(ErrorCode::MalformedValue, "empty location");
  if (d.kind == SourceKind::RemoteLine && !line::parse_endpoint(d.location))
    throw Error(ErrorCode::MalformedValue, "remote-line location must be tcp://host:port");
  validate_mapping(d.mapping);

  std::unique_lock lock(mutex_);
  if (sources_.count(d.source_id)) throw Error(ErrorCode::DuplicateSource, d.source_id);
  std::string id = d.source_id;
  sources_.emplace(id, std::move(d));
  return id;
}

void SourceRegistry::set_enabled(std::string_view source_id, bool enabled) {
  std::unique_lock lock(mutex_);
  auto it = sources_.find(source_id);
  if (it == sources_.end()) throw Error(ErrorCode::UnknownSource, std::string(source_id));
  it->second.enabled = enabled;
}

SourceDescriptor SourceRegistry::get(std::string_view source_id) const {
  std::shared_lock lock(mutex_);
  auto it = sources_.find(source_id);
  if (it == sources_.end()) throw Error(ErrorCode::UnknownSource, std::string(source_id));
  return it->second;
}

bool SourceRegistry::contains(std::string_view source_id) const {
  std::shared_lock lock(mutex_);
  return sources_.find(source_id) != sources_.end();
}

std::vector<SourceDescriptor> SourceRegistry::list() const {
  std::shared_lock lock(mutex_);
  std::vector<SourceDescriptor> out;
  for (const auto& [id, d] : sources_) out.push_back(d);
  return out;
}

HarvestResult SourceRegistry::harvest(std::string_view source_id) const {
  SourceDescriptor d = get(source_id);
  if (!d.enabled) throw Error(ErrorCode::SourceDisabled, d.source_id);
  return make_adapter(d)->harvest();
}

SourceRecord SourceRegistry::resolve(const DocumentCode& code) const {
  if (code.is_uri()) return SourceRecord{"", code.text(), {{"uri", code.text()}}};
  SourceDescriptor d = get(code.source_id());
  return make_adapter(d)->fetch(code.local_id());
}

}  // namespace mediacube
