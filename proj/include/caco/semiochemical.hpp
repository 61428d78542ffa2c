#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

#include "caco/colony.hpp"
#include "caco/erfc.hpp"
#include "caco/feature_subset.hpp"

namespace caco {

/// Emission rate Q (molecules/s), diffusion coefficient D (cm^2/s),
/// active-space radius r (cm) and threshold concentration K
/// (molecules/cm^3) of a continuously emitting point source.
struct DiffusionParams {
  double emission_rate = 1.0;
  double diffusion = 1.0;
  double radius = 1.0;
  double threshold = 1.0;

  void validate() const {
    if (!(emission_rate > 0.0) || !(diffusion > 0.0) || !(radius > 0.0) || !(threshold > 0.0)) {
      throw std::invalid_argument("diffusion parameters Q, D, r, K must be positive");
    }
  }
};

/// K(t) = Q / (2 D pi r) * erfc(r / sqrt(4 D t)).
inline double active_space_concentration(const DiffusionParams& p, double t) {
  if (!(t > 0.0)) throw std::domain_error("active-space time must be positive");
  return p.emission_rate / (2.0 * p.diffusion * std::numbers::pi * p.radius) *
         erfc(p.radius / std::sqrt(4.0 * p.diffusion * t));
}

/// Variant found in the original C# listing: Q / (2 pi r) * r / sqrt(4 D t),
/// without erfc and without D in the leading denominator. Decreases in t.
inline double listing_concentration(const DiffusionParams& p, double t) {
  if (!(t > 0.0)) throw std::domain_error("active-space time must be positive");
  return p.emission_rate / (2.0 * std::numbers::pi * p.radius) * p.radius /
         std::sqrt(4.0 * p.diffusion * t);
}

/// Large-t limit Q / (2 D pi r).
inline double asymptotic_concentration(const DiffusionParams& p) {
  return p.emission_rate / (2.0 * p.diffusion * std::numbers::pi * p.radius);
}

/// a_i <- (1 - rho) a_i + Q * (wasp solutions containing i) / (wasp solutions).
inline void deposit_allomone(ConstructionGraph& graph, std::span<const FeatureSubset> wasp_solutions,
                             double emission_rate, double evaporation) {
  for (double& a : graph.allomone) a *= 1.0 - evaporation;
  if (wasp_solutions.empty()) return;
  std::vector<std::size_t> counts(graph.n_features, 0);
  for (const auto& s : wasp_solutions) {
    for (std::size_t i : s) ++counts.at(i);
  }
  const double n = static_cast<double>(wasp_solutions.size());
  for (std::size_t i = 0; i < graph.n_features; ++i) {
    graph.allomone[i] += emission_rate * static_cast<double>(counts[i]) / n;
  }
}

/// Copies the wasp-emitted field into the ants' repulsion terms, so features
/// the wasps reinforce become the least attractive to ants.
inline void complement_interaction(std::span<const double> wasp_field, ConstructionGraph& ant_graph) {
  if (wasp_field.size() != ant_graph.n_features) {
    throw std::invalid_argument("allomone field size differs from ant graph");
  }
  ant_graph.allomone.assign(wasp_field.begin(), wasp_field.end());
}

/// Mean allomone over a subset's features; 0 for the empty subset.
inline double allomone_exposure(const ConstructionGraph& graph, const FeatureSubset& s) {
  if (s.empty()) return 0.0;
  double sum = 0.0;
  for (std::size_t i : s) sum += graph.allomone[i];
  return sum / static_cast<double>(s.size());
}

struct KillPolicy {
  double time_unit = 0.25;  // seconds of emission per iteration
  double k_scale = 1.0;     // multiplies K(t) before comparison
  bool listing_formula = false;

  double threshold(const DiffusionParams& p, std::size_t iteration) const {
    const double t = static_cast<double>(iteration) * time_unit;
    const double k = listing_formula ? listing_concentration(p, t) : active_space_concentration(p, t);
    return k * k_scale;
  }
};

/// Marks dead every ant whose exposure reaches the K(t) threshold (inclusive).
/// Returns the number of ants killed.
inline std::size_t kill_check(std::span<AgentState> ants, std::span<const FeatureSubset> ant_solutions,
                              const ConstructionGraph& graph, const DiffusionParams& params,
                              std::size_t iteration, const KillPolicy& policy = {}) {
  if (iteration < 1) throw std::domain_error("kill check needs iteration >= 1");
  if (ants.size() != ant_solutions.size()) {
    throw std::invalid_argument("one solution per ant required");
  }
  const double k = policy.threshold(params, iteration);
  std::size_t kills = 0;
  for (std::size_t j = 0; j < ants.size(); ++j) {
    if (!ants[j].alive) continue;
    if (allomone_exposure(graph, ant_solutions[j]) >= k) {
      ants[j].alive = false;
      ++kills;
    }
  }
  return kills;
}

}  // namespace caco
