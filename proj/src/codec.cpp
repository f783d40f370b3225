#include "mediacube/codec.hpp"

#include "mediacube/error.hpp"

namespace mediacube::codec {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::MalformedValue, what); }

const json& member(const json& j, const char* key) {
  if (!j.is_object()) bad("expected an object");
  auto it = j.find(key);
  if (it == j.end()) bad(std::string("missing key '") + key + "'");
  return *it;
}

std::string str(const json& j, const char* key) {
  const json& v = member(j, key);
  if (!v.is_string()) bad(std::string("'") + key + "' must be a string");
  return v.get<std::string>();
}

std::optional<std::string> opt_str(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) bad(std::string("'") + key + "' must be a string");
  return it->get<std::string>();
}

bool boolean(const json& j, const char* key) {
  const json& v = member(j, key);
  if (!v.is_boolean()) bad(std::string("'") + key + "' must be a boolean");
  return v.get<bool>();
}

void put_opt(json& j, const char* key, const std::optional<std::string>& v) {
  if (v) j[key] = *v;
}

json encode_descriptor(const GenericRecord& r, Medium m) {
  json out = json::object();
  for (const FieldSpec& f : generic_schema()) {
    if (f.medium != m) continue;
    auto v = read_field(r, f);
    if (!v) continue;
    std::string key(f.name());
    if (auto* s = std::get_if<std::string>(&*v))
      out[key] = *s;
    else
      out[key] = std::get<std::vector<std::string>>(*v);
  }
  return out;
}

void decode_descriptor(GenericRecord& r, Medium m, const json& j) {
  if (!j.is_object()) bad(std::string(medium_name(m)) + " descriptor must be an object");
  for (const auto& [key, value] : j.items()) {
    std::string path = std::string(medium_name(m)) + "." + key;
    const FieldSpec* f = find_field(path);
    if (!f) bad("unknown field " + path);
    if (value.is_string()) {
      assign_field(r, *f, value.get<std::string>());
    } else if (value.is_array()) {
      std::vector<std::string> items;
      for (const auto& item : value) {
        if (!item.is_string()) bad(path + " items must be strings");
        items.push_back(item.get<std::string>());
      }
      assign_field(r, *f, items);
    } else {
      bad(path + " must be a string or an array");
    }
  }
}

}  // namespace

json encode(const GenericRecord& r) {
  json j = json::object();
  j["document_code"] = r.document_code.text();
  j["media_class"] = std::string(class_token(r.media_class));
  if (r.text) j["text"] = encode_descriptor(r, Medium::Text);
  if (r.image) j["image"] = encode_descriptor(r, Medium::Image);
  if (r.sound) j["sound"] = encode_descriptor(r, Medium::Sound);
  return j;
}

GenericRecord decode_record(const json& j) {
  GenericRecord r{parse_document_code(str(j, "document_code")),
                  parse_class_token(str(j, "media_class")),
                  std::nullopt,
                  std::nullopt,
                  std::nullopt};
  if (j.contains("text")) r.text.emplace();
  if (j.contains("image")) r.image.emplace();
  if (j.contains("sound")) r.sound.emplace();
  for (Medium m : kAllMedia) {
    auto key = std::string(medium_name(m));
    if (j.contains(key)) decode_descriptor(r, m, j.at(key));
  }
  return r;
}

json encode(const FieldMapping& m) {
  json j = json::object();
  json presence = json::array();
  for (const auto& p : m.presence_rules) {
    json rule = {{"medium", std::string(medium_name(p.medium))}, {"field", p.field}};
    put_opt(rule, "equals", p.equals);
    presence.push_back(std::move(rule));
  }
  json fields = json::array();
  for (const auto& f : m.field_rules)
    fields.push_back({{"from", f.source_field},
                      {"to", f.target},
                      {"transform", std::string(transform_name(f.transform))}});
  j["presence"] = std::move(presence);
  j["fields"] = std::move(fields);
  j["defaults"] = m.defaults;
  j["id_field"] = m.id_field;
  put_opt(j, "uri_field", m.uri_field);
  return j;
}

FieldMapping decode_mapping(const json& j) {
  FieldMapping m;
  const json& presence = member(j, "presence");
  if (!presence.is_array()) bad("'presence' must be an array");
  for (const auto& p : presence) {
    auto medium = parse_medium(str(p, "medium"));
    if (!medium) bad("unknown medium '" + str(p, "medium") + "'");
    m.presence_rules.push_back({*medium, str(p, "field"), opt_str(p, "equals")});
  }
  if (auto it = j.find("fields"); it != j.end()) {
    if (!it->is_array()) bad("'fields' must be an array");
    for (const auto& f : *it) {
      Transform t = Transform::Identity;
      if (auto name = opt_str(f, "transform")) {
        auto parsed = parse_transform(*name);
        if (!parsed) bad("unknown transform '" + *name + "'");
        t = *parsed;
      }
      m.field_rules.push_back({str(f, "from"), str(f, "to"), t});
    }
  }
  if (auto it = j.find("defaults"); it != j.end()) {
    if (!it->is_object()) bad("'defaults' must be an object");
    for (const auto& [k, v] : it->items()) {
      if (!v.is_string()) bad("default for " + k + " must be a string");
      m.defaults.emplace(k, v.get<std::string>());
    }
  }
  if (auto id = opt_str(j, "id_field")) m.id_field = *id;
  m.uri_field = opt_str(j, "uri_field");
  return m;
}

json encode(const SourceDescriptor& d) {
  return {{"source_id", d.source_id},
          {"source_kind", std::string(source_kind_name(d.kind))},
          {"location", d.location},
          {"mapping", encode(d.mapping)},
          {"enabled", d.enabled}};
}

SourceDescriptor decode_source(const json& j) {
  SourceDescriptor d;
  d.source_id = str(j, "source_id");
  auto kind = parse_source_kind(str(j, "source_kind"));
  if (!kind) bad("unknown source kind '" + str(j, "source_kind") + "'");
  d.kind = *kind;
  d.location = str(j, "location");
  d.mapping = decode_mapping(member(j, "mapping"));
  d.enabled = j.contains("enabled") ? boolean(j, "enabled") : true;
  return d;
}

json encode(const SourceRecord& r) {
  return {{"source_id", r.source_id}, {"local_id", r.local_id}, {"raw_fields", r.raw_fields}};
}

json encode(const UsageEvent& e) {
  return {{"event_id", e.event_id},
          {"document_code", e.document_code.text()},
          {"context", e.context},
          {"user_id", e.user_id},
          {"timestamp", format_instant(e.timestamp)},
          {"use_type", std::string(use_type_name(e.use_type))}};
}

UsageEvent decode_event(const json& j) {
  UsageEvent e{0,
               parse_document_code(str(j, "document_code")),
               str(j, "context"),
               str(j, "user_id"),
               parse_instant(str(j, "timestamp")),
               parse_use_type(str(j, "use_type"))};
  if (auto it = j.find("event_id"); it != j.end()) {
    if (!it->is_number_unsigned()) bad("'event_id' must be a non-negative integer");
    e.event_id = it->get<EventId>();
  }
  return e;
}

json encode(const UserProfile& p) {
  json j = {{"user_id", p.user_id}, {"name", p.name}};
  put_opt(j, "address", p.address);
  put_opt(j, "social_class", p.social_class);
  return j;
}

UserProfile decode_user(const json& j) {
  return UserProfile{str(j, "user_id"), opt_str(j, "name").value_or(""), opt_str(j, "address"),
                     opt_str(j, "social_class")};
}

json encode(const ContextEntry& c) {
  return {{"label", c.label},
          {"origin", std::string(context_origin_name(c.origin))},
          {"first_seen", format_instant(c.first_seen)}};
}

ContextEntry decode_context(const json& j) {
  ContextEntry c;
  c.label = str(j, "label");
  std::string origin = str(j, "origin");
  if (origin == "static")
    c.origin = ContextOrigin::Static;
  else if (origin == "dynamic")
    c.origin = ContextOrigin::Dynamic;
  else
    bad("unknown context origin '" + origin + "'");
  c.first_seen = parse_instant(str(j, "first_seen"));
  return c;
}

json encode(const CubeResult& r) {
  json free = json::array();
  for (Dimension d : r.free_dimensions) free.push_back(std::string(dimension_name(d)));
  json cells = json::array();
  for (const auto& cell : r.cells) {
    json key = json::object();
    for (std::size_t i = 0; i < r.free_dimensions.size(); ++i)
      key[std::string(dimension_name(r.free_dimensions[i]))] = cell.key[i];
    cells.push_back({{"key", std::move(key)}, {"count", cell.count}, {"event_ids", cell.event_ids}});
  }
  return {{"pattern", r.pattern},
          {"free", std::move(free)},
          {"granularity", std::string(granularity_name(r.granularity))},
          {"cells", std::move(cells)},
          {"total", r.total}};
}

json encode(const ValidationReport& r) {
  auto findings = [](const std::vector<Finding>& list) {
    json out = json::array();
    for (const auto& f : list) out.push_back({{"path", f.path}, {"rule", f.rule}, {"message", f.message}});
    return out;
  };
  return {{"violations", findings(r.violations)}, {"warnings", findings(r.warnings)}};
}

}  // namespace mediacube::codec
