#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "caco/feature_subset.hpp"

namespace caco {

/// Parameters of one colony. Defaults follow the reference experiment:
/// evaporation 0.2, aging 1.0, trail limit 1.0, 1000 iterations.
struct ColonyConfig {
  double evaporation = 0.2;  // rho, fraction of trail lost per iteration
  double aging = 1.0;        // deposit scale; best subset S adds aging/|S|
  double tau_limit = 1.0;    // upper trail bound; the floor is tau_limit * 1e-6
  std::size_t n_agents = 10;
  double alpha = 1.0;  // pheromone exponent
  double beta = 1.0;   // heuristic exponent
  std::size_t iterations = 1000;
  std::uint64_t seed = 0;
  double heuristic_epsilon = 1e-3;       // eta_i = gamma({i}) + epsilon
  std::size_t global_best_period = 10;   // 0 disables the periodic global-best deposit

  void validate() const {
    if (!(evaporation > 0.0 && evaporation < 1.0)) {
      throw std::invalid_argument("evaporation must lie in (0,1)");
    }
    if (!(aging > 0.0)) throw std::invalid_argument("aging must be positive");
    if (!(tau_limit > 0.0)) throw std::invalid_argument("tau_limit must be positive");
    if (n_agents < 1) throw std::invalid_argument("n_agents must be >= 1");
    if (!(alpha >= 0.0) || !(beta >= 0.0)) {
      throw std::invalid_argument("alpha and beta must be nonnegative");
    }
    if (iterations < 1) throw std::invalid_argument("iterations must be >= 1");
    if (!(heuristic_epsilon > 0.0)) throw std::invalid_argument("heuristic epsilon must be positive");
  }

  friend bool operator==(const ColonyConfig&, const ColonyConfig&) = default;
};

/// Node-based search substrate: one pheromone and one allomone intensity
/// per condition attribute.
struct ConstructionGraph {
  std::size_t n_features = 0;
  std::vector<double> pheromone;
  std::vector<double> allomone;
  double tau_limit = 1.0;

  static constexpr double kFloorRatio = 1e-6;

  ConstructionGraph() = default;
  ConstructionGraph(std::size_t n, double limit)
      : n_features(n), pheromone(n, limit), allomone(n, 0.0), tau_limit(limit) {}

  double floor() const { return tau_limit * kFloorRatio; }

  friend bool operator==(const ConstructionGraph&, const ConstructionGraph&) = default;
};

enum class Species { ant, wasp };

inline const char* to_string(Species s) { return s == Species::ant ? "ant" : "wasp"; }

struct AgentState {
  Species species = Species::ant;
  FeatureSubset partial;
  bool alive = true;
  std::uint64_t rng_stream = 0;
};

struct IterationRecord {
  std::size_t best_size = 0;  // 0 when no solution survived
  double mean_size = 0.0;
  std::size_t kills = 0;
  FeatureSubset best_subset;

  friend bool operator==(const IterationRecord&, const IterationRecord&) = default;
};

struct RunResult {
  bool found = false;  // false when no solution was ever retained
  FeatureSubset best_subset;
  std::size_t best_size = 0;
  double best_gamma = 0.0;
  std::vector<IterationRecord> history;
  std::size_t total_kills = 0;
  std::uint64_t seed = 0;
  std::chrono::nanoseconds wallclock{0};

  /// Field-for-field equality excluding wallclock.
  bool same_outcome(const RunResult& o) const {
    return found == o.found && best_subset == o.best_subset && best_size == o.best_size &&
           best_gamma == o.best_gamma && history == o.history && total_kills == o.total_kills &&
           seed == o.seed;
  }
};

}  // namespace caco
