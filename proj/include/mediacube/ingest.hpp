#pragma once

#include <string_view>
#include <vector>

#include "mediacube/catalog_store.hpp"
#include "mediacube/document_code.hpp"
#include "mediacube/federation.hpp"

namespace mediacube {

struct IngestReport {
  std::vector<DocumentCode> ingested;  // in harvest order
  /// Harvest errors followed by mapping / validation errors.
  std::vector<RecordError> errors;
};

/// Registers every source descriptor persisted in the store.
void register_stored_sources(SourceRegistry& registry, const CatalogStore& store);

/// Harvests one source, maps every raw record and puts the results into the
/// store. Per-record failures are collected; only source-level failures
/// (UnknownSource, SourceDisabled, SourceUnreachable) throw.
IngestReport ingest(const SourceRegistry& registry, CatalogStore& store, std::string_view source_id);

}  // namespace mediacube
