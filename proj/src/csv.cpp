#include "ecbe/csv.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "ecbe/errors.hpp"
#include "ecbe/format.hpp"

namespace ecbe {

namespace {

std::vector<std::string> split_comma(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

std::optional<double> parse_real(const std::string& text) {
  const char* begin = text.data();
  const char* end = begin + text.size();
  while (begin < end && (*begin == ' ' || *begin == '\t')) ++begin;
  while (end > begin && (end[-1] == ' ' || end[-1] == '\t' || end[-1] == '\r'))
    --end;
  if (begin == end) return std::nullopt;
  double value = 0.0;
  auto result = std::from_chars(begin, end, value);
  if (result.ec != std::errc() || result.ptr != end) return std::nullopt;
  return value;
}

std::string trim(const std::string& text) {
  auto begin = text.find_first_not_of(" \t\r");
  auto end = text.find_last_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  return text.substr(begin, end - begin + 1);
}

struct RawTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

RawTable read_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw data_error("cannot open '" + path + "'");
  RawTable table;
  std::string line;
  if (!std::getline(in, line)) throw data_error("'" + path + "': empty file");
  table.header = split_comma(line);
  for (auto& name : table.header) name = trim(name);
  long row_number = 0;
  while (std::getline(in, line)) {
    ++row_number;
    if (line.empty()) continue;
    auto fields = split_comma(line);
    if (fields.size() != table.header.size())
      throw data_error("'" + path + "' row " + std::to_string(row_number) +
                       ": expected " + std::to_string(table.header.size()) +
                       " fields, got " + std::to_string(fields.size()));
    for (auto& f : fields) f = trim(f);
    table.rows.push_back(std::move(fields));
  }
  if (table.rows.empty()) throw data_error("'" + path + "': no data rows");
  return table;
}

}  // namespace

std::string schema_to_json(const Schema& schema) {
  nlohmann::json j;
  j["attributes"] = nlohmann::json::array();
  for (const auto& attr : schema.attributes) {
    nlohmann::json a;
    a["name"] = attr.name;
    if (attr.kind == AttributeKind::numeric) {
      a["kind"] = "numeric";
    } else {
      a["kind"] = "categorical";
      a["values"] = attr.values;
    }
    j["attributes"].push_back(a);
  }
  j["labels"] = schema.labels;
  return j.dump(2) + "\n";
}

Schema schema_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw data_error(std::string("schema json: ") + e.what());
  }
  Schema schema;
  for (const auto& a : j.at("attributes")) {
    Attribute attr;
    attr.name = a.at("name").get<std::string>();
    const auto kind = a.at("kind").get<std::string>();
    if (kind == "numeric") {
      attr.kind = AttributeKind::numeric;
    } else if (kind == "categorical") {
      attr.kind = AttributeKind::categorical;
      attr.values = a.at("values").get<std::vector<std::string>>();
    } else {
      throw data_error("schema json: unknown kind '" + kind + "'");
    }
    schema.attributes.push_back(std::move(attr));
  }
  schema.labels = j.at("labels").get<std::vector<std::string>>();
  schema.validate();
  return schema;
}

void write_schema_file(const Schema& schema, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw data_error("cannot write '" + path + "'");
  out << schema_to_json(schema);
}

std::unique_ptr<StreamSource> open_csv(const std::string& path,
                                       const CsvOptions& options) {
  RawTable table = read_table(path);
  const int columns = static_cast<int>(table.header.size());
  if (columns < 2)
    throw data_error("'" + path + "': need at least one attribute and a label");

  int label_col = columns - 1;
  if (!options.label_column.empty()) {
    label_col = -1;
    for (int c = 0; c < columns; ++c)
      if (table.header[c] == options.label_column) label_col = c;
    if (label_col < 0)
      throw data_error("'" + path + "': no column named '" +
                       options.label_column + "'");
  }

  std::optional<Schema> declared;
  std::string schema_path = options.schema_path;
  if (schema_path.empty()) {
    const std::string probe = path + ".schema.json";
    if (std::filesystem::exists(probe)) schema_path = probe;
  }
  if (!schema_path.empty()) {
    std::ifstream in(schema_path);
    if (!in) throw data_error("cannot open schema '" + schema_path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    declared = schema_from_json(buffer.str());
    if (declared->attribute_count() != columns - 1)
      throw data_error("schema '" + schema_path + "': attribute count " +
                       std::to_string(declared->attribute_count()) +
                       " does not match file columns");
  }

  Schema schema;
  if (declared) {
    schema = *declared;
  } else {
    // Inference: a column is numeric when every row parses as a real.
    int attr = 0;
    for (int c = 0; c < columns; ++c) {
      if (c == label_col) continue;
      Attribute attribute;
      attribute.name = table.header[c];
      attribute.kind = AttributeKind::numeric;
      for (const auto& row : table.rows) {
        if (!parse_real(row[c])) {
          attribute.kind = AttributeKind::categorical;
          break;
        }
      }
      if (attribute.kind == AttributeKind::categorical) {
        for (const auto& row : table.rows) {
          const auto& value = row[c];
          bool seen = false;
          for (const auto& v : attribute.values) seen = seen || v == value;
          if (!seen) attribute.values.push_back(value);
        }
      }
      schema.attributes.push_back(std::move(attribute));
      ++attr;
    }
    for (const auto& row : table.rows) {
      const auto& label = row[label_col];
      if (schema.label_index(label) < 0) schema.labels.push_back(label);
    }
    schema.validate();
  }

  // Category lookup tables for instance building.
  std::vector<std::unordered_map<std::string, int>> category_index(
      schema.attribute_count());
  for (int a = 0; a < schema.attribute_count(); ++a)
    for (int v = 0; v < schema.category_count(a); ++v)
      category_index[a][schema.attributes[a].values[v]] = v;
  std::unordered_map<std::string, int> label_index;
  for (int y = 0; y < schema.label_count(); ++y)
    label_index[schema.labels[y]] = y;

  std::vector<Instance> instances;
  instances.reserve(table.rows.size());
  long row_number = 0;
  for (const auto& row : table.rows) {
    ++row_number;
    Instance instance;
    instance.features.resize(schema.attribute_count());
    int attr = 0;
    for (int c = 0; c < columns; ++c) {
      if (c == label_col) continue;
      if (schema.is_numeric(attr)) {
        auto value = parse_real(row[c]);
        if (!value)
          throw data_error("'" + path + "' row " + std::to_string(row_number) +
                           ": '" + row[c] + "' is not numeric in column '" +
                           schema.attributes[attr].name + "'");
        instance.features[attr] = *value;
      } else {
        auto it = category_index[attr].find(row[c]);
        if (it == category_index[attr].end())
          throw data_error("'" + path + "' row " + std::to_string(row_number) +
                           ": unknown category '" + row[c] + "' in column '" +
                           schema.attributes[attr].name + "'");
        instance.features[attr] = static_cast<double>(it->second);
      }
      ++attr;
    }
    auto it = label_index.find(row[label_col]);
    if (it == label_index.end())
      throw data_error("'" + path + "' row " + std::to_string(row_number) +
                       ": label '" + row[label_col] + "' outside schema");
    instance.label = it->second;
    instances.push_back(std::move(instance));
  }

  return std::make_unique<MemorySource>(std::move(schema), std::move(instances));
}

void write_stream_csv(StreamSource& source, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw data_error("cannot write '" + path + "'");
  const Schema& schema = source.schema();
  for (const auto& attr : schema.attributes) out << attr.name << ',';
  out << "class\n";
  while (auto instance = source.next()) {
    for (int a = 0; a < schema.attribute_count(); ++a) {
      if (schema.is_numeric(a)) {
        out << format_double(instance->features[a]);
      } else {
        out << schema.attributes[a].values[static_cast<int>(
            instance->features[a])];
      }
      out << ',';
    }
    out << schema.labels[instance->label] << '\n';
  }
}

std::string manifest_to_json(const DriftManifest& manifest,
                             const std::string& config_echo) {
  nlohmann::json j;
  j["seed"] = manifest.seed;
  if (!config_echo.empty()) j["config"] = nlohmann::json::parse(config_echo);
  j["drift_positions"] = manifest.positions();
  j["drifts"] = nlohmann::json::array();
  for (const auto& d : manifest.drifts)
    j["drifts"].push_back({{"position", d.position}, {"kind", d.kind}});
  return j.dump(2) + "\n";
}

DriftManifest load_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw data_error("cannot open manifest '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(buffer.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw data_error(std::string("manifest json: ") + e.what());
  }
  DriftManifest manifest;
  if (j.contains("seed")) manifest.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("drifts")) {
    for (const auto& d : j["drifts"])
      manifest.drifts.push_back({d.at("position").get<long>(),
                                 d.value("kind", std::string("unknown"))});
  } else if (j.contains("drift_positions")) {
    for (const auto& p : j["drift_positions"])
      manifest.drifts.push_back({p.get<long>(), "unknown"});
  }
  return manifest;
}

}  // namespace ecbe
