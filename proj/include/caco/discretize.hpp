#pragma once

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "caco/dataset.hpp"

namespace caco {

enum class BinningStrategy { equal_frequency };

struct DiscretizationSpec {
  std::size_t n_bins = 3;
  BinningStrategy strategy = BinningStrategy::equal_frequency;
  std::map<std::size_t, std::size_t> per_attribute_overrides;

  std::size_t bins_for(std::size_t attribute) const {
    auto it = per_attribute_overrides.find(attribute);
    return it == per_attribute_overrides.end() ? n_bins : it->second;
  }

  void validate(std::size_t n_attributes) const {
    if (n_bins < 2) throw DatasetError("discretization needs at least 2 bins");
    for (auto [a, b] : per_attribute_overrides) {
      if (a >= n_attributes) throw DatasetError("bin override for unknown attribute", {}, a);
      if (b < 2) throw DatasetError("bin override below 2", {}, a);
    }
  }

  std::string describe() const {
    std::ostringstream os;
    os << "equal-frequency/" << n_bins;
    for (auto [a, b] : per_attribute_overrides) os << ";a" << a << '=' << b;
    return os.str();
  }
};

namespace detail {

inline bool parse_real(const std::string& token, double& out) {
  if (token.empty()) return false;
  char* end = nullptr;
  errno = 0;
  out = std::strtod(token.c_str(), &end);
  return errno == 0 && end == token.c_str() + token.size() && std::isfinite(out);
}

inline std::string format_edge(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

}  // namespace detail

/// Upper bin edges for equal-frequency binning: the values at ranks
/// ceil(k*n/bins) of the sorted column, k = 1..bins-1, deduplicated and
/// excluding the column maximum. A value v falls in bin #{edges < v}, so
/// equal values always share a bin.
inline std::vector<double> equal_frequency_edges(std::vector<double> values, std::size_t bins) {
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  std::vector<double> edges;
  for (std::size_t k = 1; k < bins; ++k) {
    std::size_t rank = (k * n + bins - 1) / bins;  // ceil(k n / bins), 1-based
    if (rank == 0) continue;
    double e = values[rank - 1];
    if (e >= values.back()) break;
    if (edges.empty() || edges.back() < e) edges.push_back(e);
  }
  return edges;
}

inline std::size_t bin_of(double v, const std::vector<double>& edges) {
  return static_cast<std::size_t>(std::lower_bound(edges.begin(), edges.end(), v) - edges.begin());
}

/// Replaces each listed condition attribute with equal-frequency bin ids
/// (ascending by value). Other columns are copied unchanged. Requesting more
/// bins than a column has distinct values is recorded in `notes` and the bin
/// count is clamped.
inline Dataset discretize(const Dataset& ds, const DiscretizationSpec& spec,
                          const std::vector<std::size_t>& numeric_columns) {
  spec.validate(ds.n_condition_attributes);
  Dataset out = ds;
  std::set<std::size_t> seen;

  for (std::size_t a : numeric_columns) {
    if (a >= ds.n_condition_attributes) throw DatasetError("numeric column out of range", {}, a);
    if (!seen.insert(a).second) continue;

    std::vector<double> symbol_value(ds.cardinality(a));
    for (std::size_t s = 0; s < symbol_value.size(); ++s) {
      if (!detail::parse_real(ds.symbol_names[a][s], symbol_value[s])) {
        std::size_t row = 0;
        while (ds.instances[row][a] != s) ++row;
        throw DatasetError("unparseable numeric token '" + ds.symbol_names[a][s] + "'", row + 1, a);
      }
    }
    std::vector<double> column;
    column.reserve(ds.n_instances());
    for (const auto& row : ds.instances) column.push_back(symbol_value[row[a]]);

    std::size_t distinct = std::set<double>(column.begin(), column.end()).size();
    std::size_t bins = spec.bins_for(a);
    if (bins > distinct) {
      out.notes.push_back("attribute " + std::to_string(a) + ": " + std::to_string(bins) +
                          " bins requested, clamped to " + std::to_string(distinct) +
                          " distinct values");
      bins = distinct;
    }
    auto edges = equal_frequency_edges(column, std::max<std::size_t>(bins, 1));

    std::vector<std::string> names;
    for (std::size_t b = 0; b <= edges.size(); ++b) {
      std::string lo = b == 0 ? "-inf" : detail::format_edge(edges[b - 1]);
      std::string hi = b == edges.size() ? "inf" : detail::format_edge(edges[b]);
      names.push_back("(" + lo + "," + hi + "]");
    }
    out.symbol_names[a] = std::move(names);
    for (std::size_t r = 0; r < ds.n_instances(); ++r) {
      out.instances[r][a] = static_cast<Symbol>(bin_of(column[r], edges));
    }
  }
  if (!numeric_columns.empty()) out.notes.push_back("discretized: " + spec.describe());
  return out;
}

}  // namespace caco
