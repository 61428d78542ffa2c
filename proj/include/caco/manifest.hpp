#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "caco/dataset.hpp"
#include "caco/discretize.hpp"

namespace caco {

/// Per-dataset description read from a small JSON file:
///
///   {"name": "Wine", "file": "wine.data", "decision_column": 0,
///    "numeric_columns": [0, 1, ...], "bins": 3, "delimiter": ",",
///    "missing": "?", "header": false, "ignored_columns": [], "order": 4}
///
/// `file` is resolved against the manifest's directory. `numeric_columns`
/// index condition attributes (after the decision and ignored columns are
/// removed).
struct DatasetManifest {
  std::string name;
  std::string path;
  TableSchema schema;
  std::vector<std::size_t> numeric_columns;
  DiscretizationSpec discretization;
  int order = 0;
  std::string manifest_path;

  Dataset load() const {
    Dataset ds = load_table(path, schema, name);
    if (!numeric_columns.empty()) ds = discretize(ds, discretization, numeric_columns);
    return ds;
  }

  std::string describe() const {
    std::string s = "path=" + path + " decision=" + std::to_string(schema.decision_column);
    if (!schema.ignored_columns.empty()) {
      s += " ignored=";
      for (std::size_t k = 0; k < schema.ignored_columns.size(); ++k) {
        s += (k ? "," : "") + std::to_string(schema.ignored_columns[k]);
      }
    }
    if (!numeric_columns.empty()) {
      s += " numeric=" + std::to_string(numeric_columns.size()) + " " + discretization.describe();
    }
    return s;
  }
};

inline DatasetManifest parse_manifest(const nlohmann::json& j, const std::filesystem::path& base) {
  DatasetManifest m;
  try {
    m.name = j.at("name").get<std::string>();
    std::filesystem::path file = j.at("file").get<std::string>();
    m.path = (file.is_absolute() ? file : base / file).lexically_normal().string();
    m.schema.decision_column = j.at("decision_column").get<std::size_t>();
    m.schema.ignored_columns = j.value("ignored_columns", std::vector<std::size_t>{});
    std::string delim = j.value("delimiter", std::string(","));
    if (delim == "\\t") delim = "\t";
    if (delim.size() != 1) throw DatasetError("manifest '" + m.name + "': delimiter must be one character");
    m.schema.delimiter = delim[0];
    m.schema.missing_token = j.value("missing", std::string("?"));
    m.schema.has_header = j.value("header", false);
    m.numeric_columns = j.value("numeric_columns", std::vector<std::size_t>{});
    m.discretization.n_bins = j.value("bins", std::size_t{3});
    m.order = j.value("order", 0);
  } catch (const nlohmann::json::exception& e) {
    throw DatasetError("bad manifest: " + std::string(e.what()));
  }
  return m;
}

inline DatasetManifest load_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DatasetError("cannot open manifest '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw DatasetError("manifest '" + path + "': " + e.what());
  }
  DatasetManifest m = parse_manifest(j, std::filesystem::path(path).parent_path());
  m.manifest_path = path;
  return m;
}

/// Every *.json manifest in `dir`, sorted by (order, file name).
inline std::vector<DatasetManifest> load_manifest_dir(const std::string& dir) {
  std::vector<std::filesystem::path> files;
  std::error_code ec;
  for (const auto& entry : std::filesystem::directory_iterator(dir, ec)) {
    if (entry.path().extension() == ".json") files.push_back(entry.path());
  }
  if (ec) throw DatasetError("cannot list dataset directory '" + dir + "'");
  std::sort(files.begin(), files.end());
  std::vector<DatasetManifest> out;
  for (const auto& f : files) out.push_back(load_manifest(f.string()));
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& a, const auto& b) { return a.order < b.order; });
  return out;
}

}  // namespace caco
