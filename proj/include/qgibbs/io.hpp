// Serialization (CSV/JSON) and the on-disk coefficient-table cache.
// All JSON integers are emitted as decimal strings so downstream consumers
// never overflow; every file embeds the major format version.
#pragma once

#include <string>

#include "qgibbs/bivariate_table.hpp"
#include "qgibbs/models.hpp"
#include "qgibbs/phase.hpp"

namespace qgibbs {

inline constexpr int kFormatVersion = 1;

std::string table_to_json(const BivariateTable& table);
BivariateTable table_from_json(const std::string& text);

// temp file + rename; readers never observe partial writes
void write_file_atomic(const std::string& path, const std::string& content);

std::string cache_file_path(const std::string& cache_dir, const ModelId& id, long max_n);

// Load the table from cache when a valid entry exists, otherwise build it
// and try to store it. A corrupt cache entry is ignored with a warning on
// stderr and rebuilt.
BivariateTable cached_coefficient_table(const ModelId& id, long max_n, const std::string& cache_dir,
                                        long limit = 800);

std::string regime_report_to_json(const RegimeReport& report);
RegimeReport regime_report_from_json(const std::string& text);

}  // namespace qgibbs
