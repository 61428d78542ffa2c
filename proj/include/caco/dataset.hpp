#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <istream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace caco {

using Symbol = std::uint32_t;

/// Raised for malformed input. Carries a 1-based line number and a 0-based
/// column index where one applies.
class DatasetError : public std::runtime_error {
 public:
  DatasetError(const std::string& what, std::optional<std::size_t> line = {},
               std::optional<std::size_t> column = {})
      : std::runtime_error(format(what, line, column)), line_(line), column_(column) {}

  std::optional<std::size_t> line() const { return line_; }
  std::optional<std::size_t> column() const { return column_; }

 private:
  static std::string format(const std::string& what, std::optional<std::size_t> line,
                            std::optional<std::size_t> column) {
    std::string out = what;
    if (line) out += " (line " + std::to_string(*line);
    if (column) out += std::string(line ? ", " : " (") + "column " + std::to_string(*column);
    if (line || column) out += ")";
    return out;
  }

  std::optional<std::size_t> line_;
  std::optional<std::size_t> column_;
};

/// Column roles for a delimiter-separated file.
struct TableSchema {
  std::size_t decision_column = 0;
  std::vector<std::size_t> ignored_columns;  // e.g. sample identifiers
  char delimiter = ',';
  std::string missing_token = "?";
  bool has_header = false;
};

/// Categorical decision table. Symbols are dense per column, assigned in
/// order of first appearance; `symbol_names[a][s]` recovers the raw token.
struct Dataset {
  std::string name;
  std::size_t n_condition_attributes = 0;
  std::vector<std::vector<Symbol>> instances;
  std::vector<Symbol> decision_values;

  std::vector<std::string> attribute_names;
  std::vector<std::vector<std::string>> symbol_names;
  std::vector<std::string> decision_names;

  std::string source_path;
  std::vector<std::string> notes;  // discretization record, clamping notices

  std::size_t n_instances() const { return instances.size(); }
  std::size_t cardinality(std::size_t attribute) const { return symbol_names.at(attribute).size(); }
  std::size_t n_decision_values() const { return decision_names.size(); }

  /// Throws DatasetError if any structural invariant is broken.
  void validate() const {
    if (instances.empty()) throw DatasetError("dataset '" + name + "' has no instances");
    if (n_condition_attributes == 0) {
      throw DatasetError("dataset '" + name + "' has no condition attributes");
    }
    if (decision_values.size() != instances.size()) {
      throw DatasetError("decision column length differs from instance count");
    }
    if (symbol_names.size() != n_condition_attributes ||
        attribute_names.size() != n_condition_attributes) {
      throw DatasetError("per-attribute metadata does not match attribute count");
    }
    for (std::size_t r = 0; r < instances.size(); ++r) {
      if (instances[r].size() != n_condition_attributes) {
        throw DatasetError("row has wrong number of attributes", r + 1);
      }
      for (std::size_t a = 0; a < n_condition_attributes; ++a) {
        if (instances[r][a] >= symbol_names[a].size()) {
          throw DatasetError("symbol out of range", r + 1, a);
        }
      }
      if (decision_values[r] >= decision_names.size()) {
        throw DatasetError("decision symbol out of range", r + 1);
      }
    }
  }

  friend bool operator==(const Dataset&, const Dataset&) = default;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto* ws = " \t\r\n";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split(std::string_view line, char delim) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto pos = line.find(delim, start);
    out.emplace_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

class SymbolTable {
 public:
  Symbol intern(const std::string& token) {
    auto [it, inserted] = ids_.try_emplace(token, static_cast<Symbol>(names_.size()));
    if (inserted) names_.push_back(token);
    return it->second;
  }
  std::vector<std::string> take_names() { return std::move(names_); }

 private:
  std::unordered_map<std::string, Symbol> ids_;
  std::vector<std::string> names_;
};

}  // namespace detail

/// Parses a delimiter-separated decision table from a stream. Blank lines
/// are skipped; empty cells and the schema's missing token both map to the
/// column's missing-value symbol (rendered as the missing token).
inline Dataset parse_table(std::istream& in, const TableSchema& schema, std::string name) {
  Dataset ds;
  ds.name = std::move(name);

  std::string line;
  std::size_t line_no = 0;
  std::size_t n_columns = 0;
  std::vector<std::size_t> condition_columns;
  std::vector<detail::SymbolTable> tables;
  detail::SymbolTable decision_table;
  std::vector<std::string> header;

  auto setup_columns = [&](std::size_t width) {
    n_columns = width;
    if (schema.decision_column >= n_columns) {
      throw DatasetError("decision column " + std::to_string(schema.decision_column) +
                             " out of range for " + std::to_string(n_columns) + " columns",
                         line_no, schema.decision_column);
    }
    for (std::size_t c : schema.ignored_columns) {
      if (c >= n_columns) throw DatasetError("ignored column out of range", line_no, c);
      if (c == schema.decision_column) {
        throw DatasetError("decision column cannot be ignored", line_no, c);
      }
    }
    for (std::size_t c = 0; c < n_columns; ++c) {
      bool ignored = std::find(schema.ignored_columns.begin(), schema.ignored_columns.end(),
                               c) != schema.ignored_columns.end();
      if (c != schema.decision_column && !ignored) condition_columns.push_back(c);
    }
    tables.resize(condition_columns.size());
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    auto cells = detail::split(line, schema.delimiter);

    if (n_columns == 0) {
      setup_columns(cells.size());
      if (schema.has_header) {
        header = std::move(cells);
        continue;
      }
    }
    if (cells.size() != n_columns) {
      throw DatasetError("ragged row: expected " + std::to_string(n_columns) + " fields, got " +
                             std::to_string(cells.size()),
                         line_no, std::min(cells.size(), n_columns));
    }
    std::vector<Symbol> row;
    row.reserve(condition_columns.size());
    for (std::size_t k = 0; k < condition_columns.size(); ++k) {
      std::string& cell = cells[condition_columns[k]];
      if (cell.empty()) cell = schema.missing_token;
      row.push_back(tables[k].intern(cell));
    }
    std::string& decision = cells[schema.decision_column];
    if (decision.empty()) decision = schema.missing_token;
    ds.decision_values.push_back(decision_table.intern(decision));
    ds.instances.push_back(std::move(row));
  }

  if (ds.instances.empty()) throw DatasetError("no data rows in '" + ds.name + "'");

  ds.n_condition_attributes = condition_columns.size();
  for (std::size_t k = 0; k < condition_columns.size(); ++k) {
    std::size_t c = condition_columns[k];
    ds.attribute_names.push_back(c < header.size() ? header[c] : "A" + std::to_string(c));
    ds.symbol_names.push_back(tables[k].take_names());
  }
  ds.decision_names = decision_table.take_names();
  ds.validate();
  return ds;
}

/// Loads a table from disk; see parse_table.
inline Dataset load_table(const std::string& path, const TableSchema& schema,
                          std::string name = {}) {
  std::ifstream in(path);
  if (!in) throw DatasetError("cannot open '" + path + "'");
  if (name.empty()) name = path;
  Dataset ds = parse_table(in, schema, std::move(name));
  ds.source_path = path;
  return ds;
}

/// Returns a copy with rows reordered so that row k is `ds` row `order[k]`.
inline Dataset permute_rows(const Dataset& ds, const std::vector<std::size_t>& order) {
  Dataset out = ds;
  for (std::size_t k = 0; k < order.size(); ++k) {
    out.instances[k] = ds.instances.at(order[k]);
    out.decision_values[k] = ds.decision_values.at(order[k]);
  }
  return out;
}

}  // namespace caco
