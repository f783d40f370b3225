#include "mediacube/ingest.hpp"

#include "mediacube/error.hpp"

namespace mediacube {

void register_stored_sources(SourceRegistry& registry, const CatalogStore& store) {
  for (auto& d : store.sources()) registry.register_source(std::move(d));
}

IngestReport ingest(const SourceRegistry& registry, CatalogStore& store, std::string_view source_id) {
  SourceDescriptor source = registry.get(source_id);
  HarvestResult harvested = registry.harvest(source_id);

  IngestReport report;
  report.errors = std::move(harvested.errors);
  for (const SourceRecord& raw : harvested.records) {
    try {
      GenericRecord r = map_to_generic(raw, source.mapping);
      DocumentCode code = r.document_code;
      store.put_record(std::move(r));
      report.ingested.push_back(std::move(code));
    } catch (const Error& e) {
      report.errors.push_back({raw.local_id, e.what()});
    }
  }
  return report;
}

}  // namespace mediacube
