#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "caco/colony.hpp"
#include "caco/dataset.hpp"
#include "caco/random.hpp"
#include "caco/rough_set.hpp"

namespace caco {

/// Dataset-side state shared by every agent of a run: the evaluator with
/// its memo, the full positive region, and the per-feature heuristic.
class ReductProblem {
 public:
  ReductProblem(const Dataset& ds, double heuristic_epsilon)
      : dataset_(&ds), cache_(ds), n_features_(ds.n_condition_attributes) {
    full_positive_ = cache_(FeatureSubset::full(n_features_));
    heuristic_.resize(n_features_);
    const double n = static_cast<double>(ds.n_instances());
    for (std::size_t i = 0; i < n_features_; ++i) {
      heuristic_[i] = static_cast<double>(cache_(FeatureSubset{i})) / n + heuristic_epsilon;
    }
  }

  const Dataset& dataset() const { return *dataset_; }
  std::size_t n_features() const { return n_features_; }
  std::size_t full_positive() const { return full_positive_; }
  double full_gamma() const {
    return static_cast<double>(full_positive_) / static_cast<double>(dataset_->n_instances());
  }
  const std::vector<double>& heuristic() const { return heuristic_; }

  std::size_t positive_count(const FeatureSubset& s) { return cache_(s); }
  bool feasible(const FeatureSubset& s) { return cache_(s) == full_positive_; }
  DependencyEvaluator& evaluator() { return cache_.evaluator(); }

 private:
  const Dataset* dataset_;
  PositiveRegionCache cache_;
  std::size_t n_features_;
  std::size_t full_positive_ = 0;
  std::vector<double> heuristic_;
};

struct TransitionWeights {
  std::vector<double> weights;
  double total = 0.0;
  bool degenerate() const { return !(total > 0.0); }
};

/// weight_i = tau_i^alpha * eta_i^beta for features outside `partial`, and
/// divided by (1 + a_i) for ants. Members of `partial` get weight 0.
inline TransitionWeights transition_weights(const ConstructionGraph& graph,
                                            const FeatureSubset& partial,
                                            std::span<const double> heuristic, double alpha,
                                            double beta, Species species) {
  TransitionWeights tw;
  tw.weights.assign(graph.n_features, 0.0);
  for (std::size_t i = 0; i < graph.n_features; ++i) {
    if (partial.contains(i)) continue;
    double w = std::pow(graph.pheromone[i], alpha) * std::pow(heuristic[i], beta);
    if (species == Species::ant) w /= 1.0 + graph.allomone[i];
    tw.weights[i] = w;
    tw.total += w;
  }
  return tw;
}

/// Builds one reduct: roulette-wheel forward selection until the full
/// positive region is reached, then a single shuffled pass dropping every
/// member whose removal keeps it. The result is single-deletion minimal.
inline FeatureSubset construct_solution(AgentState& agent, const ConstructionGraph& graph,
                                        ReductProblem& problem, const ColonyConfig& config) {
  RandomStream rng(agent.rng_stream);
  DependencyEvaluator& eval = problem.evaluator();
  agent.partial = FeatureSubset{};

  TransitionWeights tw = transition_weights(graph, agent.partial, problem.heuristic(),
                                            config.alpha, config.beta, agent.species);
  Partition partition(problem.dataset().n_instances());
  std::size_t positive = eval.positive_count(partition);
  std::size_t remaining = graph.n_features;

  while (positive != problem.full_positive() && remaining > 0) {
    double total = 0.0;
    for (double w : tw.weights) total += w;
    std::size_t pick;
    if (total > 0.0) {
      pick = rng.roulette(tw.weights, total);
    } else {
      std::size_t k = rng.below(remaining);
      pick = 0;
      for (std::size_t i = 0; i < graph.n_features; ++i) {
        if (agent.partial.contains(i)) continue;
        if (k-- == 0) {
          pick = i;
          break;
        }
      }
    }
    agent.partial.insert(pick);
    tw.weights[pick] = 0.0;
    --remaining;
    eval.refine(partition, pick);
    positive = eval.positive_count(partition);
  }

  std::vector<std::size_t> order(agent.partial.begin(), agent.partial.end());
  rng.shuffle(order);
  for (std::size_t i : order) {
    FeatureSubset candidate = agent.partial.without(i);
    if (problem.feasible(candidate)) agent.partial = std::move(candidate);
  }
  return agent.partial;
}

/// Adds aging/|S| to every member of `best`, capped at the trail limit.
inline void reinforce(ConstructionGraph& graph, const FeatureSubset& best,
                      const ColonyConfig& config) {
  if (best.empty()) return;
  const double amount = config.aging / static_cast<double>(best.size());
  for (std::size_t i : best) {
    graph.pheromone[i] = std::min(graph.tau_limit, graph.pheromone[i] + amount);
  }
}

inline void clamp_trails(ConstructionGraph& graph) {
  const double lo = graph.floor();
  for (double& t : graph.pheromone) t = std::clamp(t, lo, graph.tau_limit);
}

/// Index of the smallest subset, earliest on ties; solutions.size() if empty.
inline std::size_t iteration_best(std::span<const FeatureSubset> solutions) {
  std::size_t best = solutions.size();
  for (std::size_t k = 0; k < solutions.size(); ++k) {
    if (best == solutions.size() || solutions[k].size() < solutions[best].size()) best = k;
  }
  return best;
}

/// Evaporates every trail by (1 - rho), reinforces the iteration-best
/// (smallest) solution, then clamps to [floor, tau_limit].
inline void evaporate_and_deposit(ConstructionGraph& graph,
                                  std::span<const FeatureSubset> solutions,
                                  const ColonyConfig& config) {
  for (double& t : graph.pheromone) t *= 1.0 - config.evaporation;
  std::size_t best = iteration_best(solutions);
  if (best < solutions.size()) reinforce(graph, solutions[best], config);
  clamp_trails(graph);
}

/// One colony's graph and agents.
class Colony {
 public:
  Colony(Species species, const ColonyConfig& config, std::size_t n_features)
      : species_(species), config_(config), graph_(n_features, config.tau_limit) {
    agents_.resize(config.n_agents);
    for (auto& a : agents_) a.species = species;
  }

  Species species() const { return species_; }
  const ColonyConfig& config() const { return config_; }
  ConstructionGraph& graph() { return graph_; }
  const ConstructionGraph& graph() const { return graph_; }
  std::vector<AgentState>& agents() { return agents_; }

  /// Every agent respawns alive and builds one solution on the current
  /// graph snapshot, each from its own stream (run seed, iteration, index).
  std::vector<FeatureSubset> construct(ReductProblem& problem, std::size_t iteration) {
    std::vector<FeatureSubset> out;
    out.reserve(agents_.size());
    for (std::size_t k = 0; k < agents_.size(); ++k) {
      AgentState& agent = agents_[k];
      agent.alive = true;
      agent.rng_stream =
          stream_seed(config_.seed, iteration, k, static_cast<std::uint64_t>(species_));
      out.push_back(construct_solution(agent, graph_, problem, config_));
    }
    return out;
  }

  /// Pheromone update from this iteration's retained solutions, plus the
  /// global-best deposit every global_best_period iterations.
  void update(std::span<const FeatureSubset> retained, std::size_t iteration,
              const FeatureSubset* global_best) {
    evaporate_and_deposit(graph_, retained, config_);
    if (global_best && !global_best->empty() && config_.global_best_period > 0 &&
        iteration % config_.global_best_period == 0) {
      reinforce(graph_, *global_best, config_);
      clamp_trails(graph_);
    }
  }

 private:
  Species species_;
  ColonyConfig config_;
  ConstructionGraph graph_;
  std::vector<AgentState> agents_;
};

namespace detail {

/// Best-ever and per-iteration bookkeeping shared by both algorithms.
class RunRecorder {
 public:
  explicit RunRecorder(std::uint64_t seed) { result_.seed = seed; }

  void record(std::span<const FeatureSubset> retained, std::size_t kills) {
    IterationRecord rec;
    rec.kills = kills;
    std::size_t best = iteration_best(retained);
    if (best < retained.size()) {
      rec.best_subset = retained[best];
      rec.best_size = retained[best].size();
      double sum = 0.0;
      for (const auto& s : retained) sum += static_cast<double>(s.size());
      rec.mean_size = sum / static_cast<double>(retained.size());
      if (!has_best_ || rec.best_size < result_.best_size) {
        has_best_ = true;
        result_.best_subset = rec.best_subset;
        result_.best_size = rec.best_size;
      }
    }
    result_.total_kills += kills;
    result_.history.push_back(std::move(rec));
  }

  const FeatureSubset* best() const { return has_best_ ? &result_.best_subset : nullptr; }

  RunResult finish(double full_gamma, std::chrono::steady_clock::time_point start) {
    result_.found = has_best_;
    result_.best_gamma = has_best_ ? full_gamma : 0.0;
    result_.wallclock = std::chrono::steady_clock::now() - start;
    return std::move(result_);
  }

 private:
  RunResult result_;
  bool has_best_ = false;
};

}  // namespace detail

/// Baseline single-colony search.
inline RunResult run_aco(const Dataset& ds, const ColonyConfig& config) {
  config.validate();
  auto start = std::chrono::steady_clock::now();
  ReductProblem problem(ds, config.heuristic_epsilon);
  Colony ants(Species::ant, config, ds.n_condition_attributes);
  detail::RunRecorder recorder(config.seed);

  for (std::size_t t = 1; t <= config.iterations; ++t) {
    std::vector<FeatureSubset> solutions = ants.construct(problem, t);
    recorder.record(solutions, 0);
    ants.update(solutions, t, recorder.best());
  }
  return recorder.finish(problem.full_gamma(), start);
}

}  // namespace caco
