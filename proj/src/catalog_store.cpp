#include "mediacube/catalog_store.hpp"

#include <algorithm>
#include <fstream>
#include <mutex>
#include <sstream>

#include "mediacube/codec.hpp"
#include "mediacube/error.hpp"

namespace mediacube {

std::string_view use_type_name(UseType t) noexcept {
  return t == UseType::Repetitive ? "repetitive" : "occasional";
}

UseType parse_use_type(std::string_view token) {
  if (token == "repetitive") return UseType::Repetitive;
  if (token == "occasional") return UseType::Occasional;
  throw Error(ErrorCode::MalformedValue,
              "use type must be repetitive|occasional, got '" + std::string(token) + "'");
}

std::string_view context_origin_name(ContextOrigin o) noexcept {
  return o == ContextOrigin::Static ? "static" : "dynamic";
}

const std::vector<std::string>& static_context_labels() {
  static const std::vector<std::string> labels{"teaching", "learning", "documentation",
                                               "entertainment"};
  return labels;
}

const GenericRecord* CatalogSnapshot::find_record(const DocumentCode& code) const {
  auto it = records.find(code);
  return it == records.end() ? nullptr : &it->second;
}

const UserProfile* CatalogSnapshot::find_user(std::string_view user_id) const {
  auto it = users.find(user_id);
  return it == users.end() ? nullptr : &it->second;
}

bool CatalogSnapshot::has_context(std::string_view label) const {
  return std::any_of(contexts.begin(), contexts.end(),
                     [&](const ContextEntry& c) { return c.label == label; });
}

bool same_contents(const CatalogSnapshot& a, const CatalogSnapshot& b) {
  return a.records == b.records && a.events == b.events && a.users == b.users &&
         a.contexts == b.contexts && a.sources == b.sources;
}

namespace {

bool printable_label(std::string_view s) noexcept {
  if (s.empty()) return false;
  for (unsigned char c : s)
    if (c < 0x20 || c == 0x7f) return false;
  return true;
}

Instant now_seconds() {
  return std::chrono::floor<std::chrono::seconds>(std::chrono::system_clock::now());
}

std::size_t static_rank(std::string_view label) {
  const auto& labels = static_context_labels();
  return static_cast<std::size_t>(std::find(labels.begin(), labels.end(), label) - labels.begin());
}

bool context_order(const ContextEntry& a, const ContextEntry& b) {
  if (a.origin != b.origin) return a.origin == ContextOrigin::Static;
  if (a.origin == ContextOrigin::Static) return static_rank(a.label) < static_rank(b.label);
  if (a.first_seen != b.first_seen) return a.first_seen < b.first_seen;
  return a.label < b.label;
}

}  // namespace

CatalogStore::CatalogStore() {
  for (const auto& label : static_context_labels())
    state_.contexts.push_back({label, ContextOrigin::Static, Instant{}});
}

void CatalogStore::sort_contexts_locked() {
  std::sort(state_.contexts.begin(), state_.contexts.end(), context_order);
}

void CatalogStore::put_record(GenericRecord r) {
  std::unique_lock lock(mutex_);
  ValidationReport report = validate_record(r, builtin_vocabularies());
  if (!report.ok()) {
    const Finding& f = report.violations.front();
    throw Error(ErrorCode::RecordInvalid, r.document_code.text() + ": " + f.path + ": " + f.message);
  }
  DocumentCode code = r.document_code;
  state_.records.insert_or_assign(std::move(code), std::move(r));
  cached_.reset();
}

GenericRecord CatalogStore::get_record(const DocumentCode& code) const {
  std::shared_lock lock(mutex_);
  const GenericRecord* r = state_.find_record(code);
  if (!r) throw Error(ErrorCode::RecordNotFound, code.text());
  return *r;
}

bool CatalogStore::has_record(const DocumentCode& code) const {
  std::shared_lock lock(mutex_);
  return state_.find_record(code) != nullptr;
}

void CatalogStore::register_user(UserProfile p) {
  if (!printable_label(p.user_id))
    throw Error(ErrorCode::MalformedProfile, "user id must be a non-empty printable label");
  std::unique_lock lock(mutex_);
  std::string id = p.user_id;
  state_.users.insert_or_assign(std::move(id), std::move(p));
  cached_.reset();
}

UserProfile CatalogStore::get_user(std::string_view user_id) const {
  std::shared_lock lock(mutex_);
  const UserProfile* u = state_.find_user(user_id);
  if (!u) throw Error(ErrorCode::UnknownUser, std::string(user_id));
  return *u;
}

EventId CatalogStore::record_usage(UsageEvent e) {
  if (!printable_label(e.context))
    throw Error(ErrorCode::MalformedEvent, "context must be a non-empty printable label");
  std::unique_lock lock(mutex_);
  if (!state_.find_record(e.document_code))
    throw Error(ErrorCode::UnknownDocument, e.document_code.text());
  if (!state_.find_user(e.user_id)) throw Error(ErrorCode::UnknownUser, e.user_id);

  if (!state_.has_context(e.context)) {
    state_.contexts.push_back({e.context, ContextOrigin::Dynamic, e.timestamp});
    sort_contexts_locked();
  }
  e.event_id = next_event_id_++;
  EventId id = e.event_id;
  state_.events.push_back(std::move(e));
  cached_.reset();
  return id;
}

std::vector<ContextEntry> CatalogStore::list_contexts() const {
  std::shared_lock lock(mutex_);
  return state_.contexts;
}

void CatalogStore::put_source(SourceDescriptor d) {
  std::unique_lock lock(mutex_);
  auto it = std::find_if(state_.sources.begin(), state_.sources.end(),
                         [&](const SourceDescriptor& s) { return s.source_id == d.source_id; });
  if (it != state_.sources.end())
    *it = std::move(d);
  else
    state_.sources.push_back(std::move(d));
  std::sort(state_.sources.begin(), state_.sources.end(),
            [](const SourceDescriptor& a, const SourceDescriptor& b) { return a.source_id < b.source_id; });
  cached_.reset();
}

std::vector<SourceDescriptor> CatalogStore::sources() const {
  std::shared_lock lock(mutex_);
  return state_.sources;
}

std::shared_ptr<const CatalogSnapshot> CatalogStore::snapshot() const {
  {
    std::shared_lock lock(mutex_);
    if (cached_) return cached_;
  }
  std::unique_lock lock(mutex_);
  if (!cached_) {
    auto snap = std::make_shared<CatalogSnapshot>(state_);
    snap->taken_at = now_seconds();
    cached_ = std::move(snap);
  }
  return cached_;
}

// ---------------------------------------------------------------------------
// Persistence

std::string CatalogStore::serialize(const CatalogSnapshot& s) {
  std::string out;
  auto emit = [&](codec::json j, const char* kind) {
    j["kind"] = kind;
    out += j.dump();
    out += '\n';
  };
  for (const auto& d : s.sources) emit(codec::encode(d), "source");
  for (const auto& [code, r] : s.records) emit(codec::encode(r), "record");
  for (const auto& [id, u] : s.users) emit(codec::encode(u), "user");
  for (const auto& c : s.contexts) emit(codec::encode(c), "context");
  for (const auto& e : s.events) emit(codec::encode(e), "event");
  return out;
}

void CatalogStore::save(const std::filesystem::path& path) const {
  std::string text = serialize(*snapshot());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::StorageIO, "cannot write " + tmp.string());
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    out.flush();
    if (!out) throw Error(ErrorCode::StorageIO, "write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error(ErrorCode::StorageIO, "cannot replace " + path.string() + ": " + ec.message());
}

std::unique_ptr<CatalogStore> CatalogStore::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::StorageIO, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::StorageIO, "read failed for " + path.string());
  return deserialize(buf.str());
}

namespace {

int kind_rank(std::string_view kind) {
  if (kind == "source") return 0;
  if (kind == "record") return 1;
  if (kind == "user") return 2;
  if (kind == "context") return 3;
  if (kind == "event") return 4;
  return -1;
}

}  // namespace

std::unique_ptr<CatalogStore> CatalogStore::deserialize(std::string_view text) {
  auto store = std::make_unique<CatalogStore>();
  CatalogSnapshot& st = store->state_;
  st.contexts.clear();

  std::size_t line_no = 0;
  int last_rank = 0;
  EventId last_event = 0;
  while (!text.empty()) {
    ++line_no;
    auto nl = text.find('\n');
    if (nl == std::string_view::npos)
      throw CorruptCatalogError(line_no, "truncated: line has no terminating newline");
    std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl + 1);
    if (line.empty()) throw CorruptCatalogError(line_no, "blank line");

    try {
      codec::json j = codec::json::parse(line);
      if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
        throw CorruptCatalogError(line_no, "object with a string 'kind' expected");
      std::string kind = j["kind"].get<std::string>();
      int rank = kind_rank(kind);
      if (rank < 0) throw CorruptCatalogError(line_no, "unknown kind '" + kind + "'");
      if (rank < last_rank) throw CorruptCatalogError(line_no, "'" + kind + "' out of order");
      last_rank = rank;
      j.erase("kind");

      switch (rank) {
        case 0: {
          SourceDescriptor d = codec::decode_source(j);
          if (!st.sources.empty() && !(st.sources.back().source_id < d.source_id))
            throw CorruptCatalogError(line_no, "duplicate or unsorted source " + d.source_id);
          st.sources.push_back(std::move(d));
          break;
        }
        case 1: {
          GenericRecord r = codec::decode_record(j);
          ValidationReport report = validate_record(r, builtin_vocabularies());
          if (!report.ok())
            throw CorruptCatalogError(line_no, "invalid record " + r.document_code.text() + ": " +
                                                   report.violations.front().path + ": " +
                                                   report.violations.front().message);
          DocumentCode code = r.document_code;
          if (!st.records.emplace(code, std::move(r)).second)
            throw CorruptCatalogError(line_no, "duplicate record " + code.text());
          break;
        }
        case 2: {
          UserProfile u = codec::decode_user(j);
          if (!printable_label(u.user_id)) throw CorruptCatalogError(line_no, "bad user id");
          std::string id = u.user_id;
          if (!st.users.emplace(id, std::move(u)).second)
            throw CorruptCatalogError(line_no, "duplicate user " + id);
          break;
        }
        case 3: {
          ContextEntry c = codec::decode_context(j);
          if (!printable_label(c.label)) throw CorruptCatalogError(line_no, "bad context label");
          if (st.has_context(c.label)) throw CorruptCatalogError(line_no, "duplicate context " + c.label);
          bool is_static = static_rank(c.label) < static_context_labels().size();
          if (is_static != (c.origin == ContextOrigin::Static))
            throw CorruptCatalogError(line_no, "context " + c.label + " has the wrong origin");
          st.contexts.push_back(std::move(c));
          break;
        }
        case 4: {
          if (!j.contains("event_id")) throw CorruptCatalogError(line_no, "event without event_id");
          UsageEvent e = codec::decode_event(j);
          if (e.event_id <= last_event)
            throw CorruptCatalogError(line_no, "event ids must be strictly increasing");
          if (!st.find_record(e.document_code))
            throw CorruptCatalogError(line_no, "event references unknown document " + e.document_code.text());
          if (!st.find_user(e.user_id))
            throw CorruptCatalogError(line_no, "event references unknown user " + e.user_id);
          if (!st.has_context(e.context))
            throw CorruptCatalogError(line_no, "event references unregistered context " + e.context);
          last_event = e.event_id;
          st.events.push_back(std::move(e));
          break;
        }
      }
    } catch (const CorruptCatalogError&) {
      throw;
    } catch (const Error& e) {
      throw CorruptCatalogError(line_no, std::string(e.what()));
    } catch (const codec::json::exception& e) {
      throw CorruptCatalogError(line_no, e.what());
    }
  }

  for (const auto& label : static_context_labels())
    if (!st.has_context(label)) st.contexts.push_back({label, ContextOrigin::Static, Instant{}});
  store->sort_contexts_locked();
  store->next_event_id_ = last_event + 1;
  return store;
}

}  // namespace mediacube
