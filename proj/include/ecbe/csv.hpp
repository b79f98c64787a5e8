#pragma once

#include <memory>
#include <string>

#include "ecbe/generators.hpp"
#include "ecbe/stream.hpp"

namespace ecbe {

struct CsvOptions {
  std::string label_column;  // header name; empty selects the last column
  std::string schema_path;   // explicit sidecar; empty probes <path>.schema.json
};

/// Opens a comma-separated file (UTF-8, header row) as a stream source.
/// Without a sidecar schema, attribute kinds are inferred per column
/// (numeric when every row parses as a real, categorical over the observed
/// distinct values otherwise) and the label domain is the distinct label
/// values in file order of first appearance. Labels are closed-world: with a
/// sidecar schema, values outside it are data errors.
std::unique_ptr<StreamSource> open_csv(const std::string& path,
                                       const CsvOptions& options = {});

/// Drains a source to CSV (header from the schema, label last).
void write_stream_csv(StreamSource& source, const std::string& path);

std::string schema_to_json(const Schema& schema);
Schema schema_from_json(const std::string& text);
void write_schema_file(const Schema& schema, const std::string& path);

std::string manifest_to_json(const DriftManifest& manifest,
                             const std::string& config_echo);
DriftManifest load_manifest(const std::string& path);

}  // namespace ecbe
