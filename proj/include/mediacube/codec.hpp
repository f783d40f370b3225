#pragma once

// Canonical JSON form of every catalog value. Objects use nlohmann::json's
// default (sorted) key order, so dump() output is deterministic.

#include "json.hpp"

#include "mediacube/analytics.hpp"
#include "mediacube/catalog_store.hpp"
#include "mediacube/descriptors.hpp"
#include "mediacube/federation.hpp"

namespace mediacube::codec {

using nlohmann::json;

// Decoders throw Error(MalformedValue) (or the owning module's error) on bad
// input.

json encode(const GenericRecord& r);
GenericRecord decode_record(const json& j);

json encode(const FieldMapping& m);
FieldMapping decode_mapping(const json& j);

json encode(const SourceDescriptor& d);
SourceDescriptor decode_source(const json& j);

json encode(const SourceRecord& r);

json encode(const UsageEvent& e);
UsageEvent decode_event(const json& j);

json encode(const UserProfile& p);
UserProfile decode_user(const json& j);

json encode(const ContextEntry& c);
ContextEntry decode_context(const json& j);

json encode(const CubeResult& r);
json encode(const ValidationReport& r);

}  // namespace mediacube::codec
