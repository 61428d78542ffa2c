#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace caco {

/// A set of condition-attribute indices kept in ascending order.
///
/// The sorted form is canonical, so two subsets with the same members
/// compare equal and hash identically regardless of insertion order.
class FeatureSubset {
 public:
  using value_type = std::size_t;
  using const_iterator = std::vector<std::size_t>::const_iterator;

  FeatureSubset() = default;

  FeatureSubset(std::initializer_list<std::size_t> members)
      : FeatureSubset(std::vector<std::size_t>(members)) {}

  explicit FeatureSubset(std::vector<std::size_t> members)
      : members_(std::move(members)) {
    std::sort(members_.begin(), members_.end());
    if (std::adjacent_find(members_.begin(), members_.end()) != members_.end()) {
      throw std::invalid_argument("FeatureSubset: duplicate attribute index");
    }
  }

  static FeatureSubset full(std::size_t n) {
    FeatureSubset s;
    s.members_.resize(n);
    for (std::size_t i = 0; i < n; ++i) s.members_[i] = i;
    return s;
  }

  bool contains(std::size_t i) const {
    return std::binary_search(members_.begin(), members_.end(), i);
  }

  /// Returns false when `i` was already a member.
  bool insert(std::size_t i) {
    auto it = std::lower_bound(members_.begin(), members_.end(), i);
    if (it != members_.end() && *it == i) return false;
    members_.insert(it, i);
    return true;
  }

  bool erase(std::size_t i) {
    auto it = std::lower_bound(members_.begin(), members_.end(), i);
    if (it == members_.end() || *it != i) return false;
    members_.erase(it);
    return true;
  }

  FeatureSubset without(std::size_t i) const {
    FeatureSubset s = *this;
    s.erase(i);
    return s;
  }

  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  const_iterator begin() const { return members_.begin(); }
  const_iterator end() const { return members_.end(); }
  std::size_t operator[](std::size_t k) const { return members_[k]; }
  const std::vector<std::size_t>& members() const { return members_; }

  /// Throws std::out_of_range when a member is not below `n_attributes`.
  void check_bounds(std::size_t n_attributes) const {
    if (!members_.empty() && members_.back() >= n_attributes) {
      throw std::out_of_range("FeatureSubset: attribute index " +
                              std::to_string(members_.back()) +
                              " out of range for " +
                              std::to_string(n_attributes) + " attributes");
    }
  }

  /// Space-free rendering, e.g. "{0,3,7}".
  std::string to_string() const {
    std::ostringstream os;
    os << '{';
    for (std::size_t k = 0; k < members_.size(); ++k) {
      if (k) os << ',';
      os << members_[k];
    }
    os << '}';
    return os.str();
  }

  friend bool operator==(const FeatureSubset&, const FeatureSubset&) = default;
  friend auto operator<=>(const FeatureSubset&, const FeatureSubset&) = default;

  friend std::ostream& operator<<(std::ostream& os, const FeatureSubset& s) {
    return os << s.to_string();
  }

 private:
  std::vector<std::size_t> members_;
};

/// Parses the rendering produced by FeatureSubset::to_string. Braces are
/// optional; an empty string or "{}" yields the empty subset.
inline FeatureSubset parse_feature_subset(std::string text) {
  std::erase_if(text, [](char c) { return c == '{' || c == '}' || c == ' '; });
  std::vector<std::size_t> members;
  std::istringstream is(text);
  std::string token;
  while (std::getline(is, token, ',')) {
    if (token.empty()) continue;
    std::size_t pos = 0;
    unsigned long long v = std::stoull(token, &pos);
    if (pos != token.size()) {
      throw std::invalid_argument("bad attribute index '" + token + "'");
    }
    members.push_back(static_cast<std::size_t>(v));
  }
  return FeatureSubset(std::move(members));
}

}  // namespace caco

template <>
struct std::hash<caco::FeatureSubset> {
  std::size_t operator()(const caco::FeatureSubset& s) const noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::size_t i : s) {
      h ^= static_cast<std::uint64_t>(i) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};
