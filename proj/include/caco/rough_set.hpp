#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "caco/dataset.hpp"
#include "caco/feature_subset.hpp"

namespace caco {

/// Indiscernibility partition under a subset, refined one attribute at a
/// time. Class ids are dense and numbered by first instance.
class Partition {
 public:
  explicit Partition(std::size_t n_instances) : class_of_(n_instances, 0), n_classes_(1) {}

  std::size_t n_classes() const { return n_classes_; }
  std::uint32_t class_of(std::size_t row) const { return class_of_[row]; }
  const std::vector<std::uint32_t>& labels() const { return class_of_; }

  /// Splits every class by the symbol of `column`; `cardinality` bounds the
  /// symbols. `scratch` must hold at least n_classes()*cardinality entries of
  /// -1 and is restored to that state on return.
  void refine(const std::vector<Symbol>& column, std::size_t cardinality,
              std::vector<std::int32_t>& scratch, std::vector<std::size_t>& touched) {
    const std::size_t need = n_classes_ * cardinality;
    if (scratch.size() < need) scratch.resize(need, -1);
    touched.clear();
    std::uint32_t next = 0;
    for (std::size_t r = 0; r < class_of_.size(); ++r) {
      std::size_t key = static_cast<std::size_t>(class_of_[r]) * cardinality + column[r];
      std::int32_t& slot = scratch[key];
      if (slot < 0) {
        slot = static_cast<std::int32_t>(next++);
        touched.push_back(key);
      }
      class_of_[r] = static_cast<std::uint32_t>(slot);
    }
    for (std::size_t key : touched) scratch[key] = -1;
    n_classes_ = next;
  }

 private:
  std::vector<std::uint32_t> class_of_;
  std::size_t n_classes_;
};

/// Column-major view of a dataset with reusable buffers for fast
/// positive-region counting. Not thread-safe; use one per worker.
class DependencyEvaluator {
 public:
  explicit DependencyEvaluator(const Dataset& ds)
      : n_(ds.n_instances()),
        columns_(ds.n_condition_attributes, std::vector<Symbol>(ds.n_instances())),
        cardinality_(ds.n_condition_attributes),
        decision_(ds.decision_values) {
    for (std::size_t a = 0; a < ds.n_condition_attributes; ++a) {
      cardinality_[a] = std::max<std::size_t>(ds.cardinality(a), 1);
      for (std::size_t r = 0; r < n_; ++r) columns_[a][r] = ds.instances[r][a];
    }
  }

  std::size_t n_instances() const { return n_; }
  std::size_t n_attributes() const { return columns_.size(); }

  Partition partition(const FeatureSubset& subset) {
    subset.check_bounds(n_attributes());
    Partition p(n_);
    for (std::size_t a : subset) refine(p, a);
    return p;
  }

  void refine(Partition& p, std::size_t attribute) {
    p.refine(columns_[attribute], cardinality_[attribute], scratch_, touched_);
  }

  /// Number of instances whose class is pure in the decision attribute.
  std::size_t positive_count(const Partition& p) {
    const std::size_t k = p.n_classes();
    first_decision_.assign(k, kUnset);
    class_size_.assign(k, 0);
    const auto& labels = p.labels();
    for (std::size_t r = 0; r < n_; ++r) {
      std::uint32_t c = labels[r];
      ++class_size_[c];
      std::uint32_t& d = first_decision_[c];
      if (d == kUnset) {
        d = decision_[r];
      } else if (d != decision_[r]) {
        d = kImpure;
      }
    }
    std::size_t pos = 0;
    for (std::size_t c = 0; c < k; ++c) {
      if (first_decision_[c] != kImpure) pos += class_size_[c];
    }
    return pos;
  }

  std::size_t positive_count(const FeatureSubset& subset) {
    Partition p = partition(subset);
    return positive_count(p);
  }

 private:
  static constexpr std::uint32_t kUnset = std::numeric_limits<std::uint32_t>::max();
  static constexpr std::uint32_t kImpure = kUnset - 1;

  std::size_t n_;
  std::vector<std::vector<Symbol>> columns_;
  std::vector<std::size_t> cardinality_;
  std::vector<Symbol> decision_;

  std::vector<std::int32_t> scratch_;
  std::vector<std::size_t> touched_;
  std::vector<std::uint32_t> first_decision_;
  std::vector<std::size_t> class_size_;
};

/// Per-run memo of subset -> positive-region size, wrapped around an
/// evaluator. Confined to a single worker.
class PositiveRegionCache {
 public:
  explicit PositiveRegionCache(const Dataset& ds) : eval_(ds) {}

  std::size_t operator()(const FeatureSubset& subset) {
    auto it = memo_.find(subset);
    if (it != memo_.end()) {
      ++hits_;
      return it->second;
    }
    std::size_t pos = eval_.positive_count(subset);
    memo_.emplace(subset, pos);
    return pos;
  }

  DependencyEvaluator& evaluator() { return eval_; }
  std::size_t size() const { return memo_.size(); }
  std::size_t hits() const { return hits_; }

 private:
  DependencyEvaluator eval_;
  std::unordered_map<FeatureSubset, std::size_t> memo_;
  std::size_t hits_ = 0;
};

/// Instance indices grouped by indiscernibility under `subset`, classes in
/// order of their first instance.
inline std::vector<std::vector<std::size_t>> equivalence_classes(const Dataset& ds,
                                                                const FeatureSubset& subset) {
  DependencyEvaluator eval(ds);
  Partition p = eval.partition(subset);
  std::vector<std::vector<std::size_t>> classes(p.n_classes());
  for (std::size_t r = 0; r < ds.n_instances(); ++r) classes[p.class_of(r)].push_back(r);
  return classes;
}

struct DependencyReport {
  double gamma = 0.0;
  std::size_t positive_region_size = 0;
  double full_gamma = 0.0;
};

inline DependencyReport dependency_degree(const Dataset& ds, const FeatureSubset& subset) {
  DependencyEvaluator eval(ds);
  const double n = static_cast<double>(ds.n_instances());
  DependencyReport rep;
  rep.positive_region_size = eval.positive_count(subset);
  rep.gamma = static_cast<double>(rep.positive_region_size) / n;
  rep.full_gamma =
      static_cast<double>(eval.positive_count(FeatureSubset::full(ds.n_condition_attributes))) / n;
  return rep;
}

struct ReductVerdict {
  bool valid = false;
  std::string reason;
  explicit operator bool() const { return valid; }
};

/// Reduct check: the subset preserves the full positive region and no
/// single member can be dropped without shrinking it.
inline ReductVerdict is_valid_reduct(const Dataset& ds, const FeatureSubset& subset) {
  subset.check_bounds(ds.n_condition_attributes);
  DependencyEvaluator eval(ds);
  const std::size_t full = eval.positive_count(FeatureSubset::full(ds.n_condition_attributes));
  const std::size_t pos = eval.positive_count(subset);
  if (pos != full) {
    return {false, "positive region " + std::to_string(pos) + " < full " + std::to_string(full)};
  }
  for (std::size_t a : subset) {
    if (eval.positive_count(subset.without(a)) == full) {
      return {false, "attribute " + std::to_string(a) + " is redundant"};
    }
  }
  return {true, "reduct"};
}

class OracleGuardExceeded : public std::runtime_error {
 public:
  OracleGuardExceeded(std::size_t attributes, std::size_t guard)
      : std::runtime_error("exhaustive reduct search needs " + std::to_string(attributes) +
                           " attributes <= guard " + std::to_string(guard)) {}
};

/// Calls `visit` with every k-subset of {0..n-1} in lexicographic order until
/// it returns true. Returns whether any call returned true.
template <typename Visit>
bool for_each_combination(std::size_t n, std::size_t k, Visit&& visit) {
  if (k > n) return false;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    if (visit(static_cast<const std::vector<std::size_t>&>(idx))) return true;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) return false;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

/// Minimum-cardinality subset preserving the full positive region, found by
/// enumerating sizes 0,1,2,... with lexicographic order inside each size.
inline FeatureSubset brute_force_min_reduct(const Dataset& ds, std::size_t max_attributes = 20) {
  const std::size_t n = ds.n_condition_attributes;
  if (n > max_attributes) throw OracleGuardExceeded(n, max_attributes);
  DependencyEvaluator eval(ds);
  const std::size_t full = eval.positive_count(FeatureSubset::full(n));
  for (std::size_t k = 0; k <= n; ++k) {
    std::optional<FeatureSubset> found;
    for_each_combination(n, k, [&](const std::vector<std::size_t>& idx) {
      Partition p(ds.n_instances());
      for (std::size_t a : idx) eval.refine(p, a);
      if (eval.positive_count(p) == full) {
        found = FeatureSubset(idx);
        return true;
      }
      return false;
    });
    if (found) return *found;
  }
  return FeatureSubset::full(n);
}

/// One persisted oracle result.
struct OracleRecord {
  std::string dataset;
  std::string discretization;
  FeatureSubset reduct;
  double gamma = 0.0;
  friend bool operator==(const OracleRecord&, const OracleRecord&) = default;
};

/// Tab-separated: name, discretization, {indices}, gamma. '#' starts a comment.
inline std::vector<OracleRecord> read_oracle_records(std::istream& in) {
  std::vector<OracleRecord> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    auto cells = detail::split(line, '\t');
    if (cells.size() != 4) throw DatasetError("oracle record needs 4 fields", line_no);
    OracleRecord rec;
    rec.dataset = cells[0];
    rec.discretization = cells[1];
    rec.reduct = parse_feature_subset(cells[2]);
    rec.gamma = std::stod(cells[3]);
    out.push_back(std::move(rec));
  }
  return out;
}

inline void write_oracle_record(std::ostream& out, const OracleRecord& rec) {
  std::ostringstream g;
  g.precision(17);
  g << rec.gamma;
  out << rec.dataset << '\t' << rec.discretization << '\t' << rec.reduct << '\t' << g.str()
      << '\n';
}

}  // namespace caco
