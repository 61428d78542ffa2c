#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <vector>

#include "caco/aco.hpp"
#include "caco/colony.hpp"
#include "caco/dataset.hpp"
#include "caco/semiochemical.hpp"

namespace caco {

/// search: wasps run their own pheromone search every iteration.
/// static: wasps build once at iteration 1 and re-emit those solutions.
enum class WaspMode { search, static_solutions };

struct CacoConfig {
  ColonyConfig ant;
  ColonyConfig wasp;
  DiffusionParams diffusion;
  double time_unit = 0.25;       // emission seconds per iteration
  bool listing_formula = false;  // use the listing's K(t) variant
  WaspMode wasp_mode = WaspMode::search;
  std::size_t coupling_period = 1;
  /// When false no allomone is emitted, ants are never repelled or killed,
  /// and the ant colony reproduces run_aco exactly.
  bool competition = true;
  /// Allomone evaporation; defaults to the ant colony's rho.
  std::optional<double> allomone_evaporation;
  /// Multiplier on K(t). Unset means saturation-matched: 2 pi D r / rho_a,
  /// which maps the K(t) asymptote Q/(2 D pi r) onto the steady-state
  /// ceiling Q/rho_a of the allomone field.
  std::optional<double> k_scale;

  double allomone_rho() const { return allomone_evaporation.value_or(ant.evaporation); }

  double resolved_k_scale() const {
    return k_scale.value_or(2.0 * std::numbers::pi * diffusion.diffusion * diffusion.radius /
                            allomone_rho());
  }

  KillPolicy resolved_kill() const {
    return KillPolicy{time_unit, resolved_k_scale(), listing_formula};
  }

  void validate() const {
    ant.validate();
    wasp.validate();
    diffusion.validate();
    if (coupling_period < 1) throw std::invalid_argument("coupling period must be >= 1");
    double rho = allomone_rho();
    if (!(rho > 0.0 && rho < 1.0)) throw std::invalid_argument("allomone evaporation must lie in (0,1)");
    if (!(time_unit > 0.0)) throw std::invalid_argument("time unit must be positive");
    if (!(resolved_k_scale() > 0.0)) throw std::invalid_argument("K scale must be positive");
  }

  /// Wasp colony mirrors the ant colony (same seed and sizes).
  static CacoConfig symmetric(const ColonyConfig& colony) {
    CacoConfig c;
    c.ant = colony;
    c.wasp = colony;
    return c;
  }
};

/// Called each iteration right before the ants build, with both colonies
/// exposed read-only.
struct CacoHooks {
  std::function<void(std::size_t iteration, const Colony& ants, const Colony& wasps)> before_ants;
};

/// Two colonies on separate pheromone graphs coupled through the wasp
/// allomone field. Returns the ant colony's best-ever surviving subset.
inline RunResult run_caco(const Dataset& ds, const CacoConfig& config, const CacoHooks& hooks = {}) {
  config.validate();
  auto start = std::chrono::steady_clock::now();
  const std::size_t n = ds.n_condition_attributes;
  // Both colonies share one evaluator; the heuristic uses the ant epsilon.
  ReductProblem problem(ds, config.ant.heuristic_epsilon);

  Colony ants(Species::ant, config.ant, n);
  Colony wasps(Species::wasp, config.wasp, n);
  const KillPolicy kill = config.resolved_kill();
  detail::RunRecorder recorder(config.ant.seed);
  std::vector<FeatureSubset> wasp_solutions;
  std::vector<FeatureSubset> wasp_best;

  for (std::size_t t = 1; t <= config.ant.iterations; ++t) {
    if (config.competition) {
      if (config.wasp_mode == WaspMode::search || t == 1) {
        wasp_solutions = wasps.construct(problem, t);
      }
      deposit_allomone(wasps.graph(), wasp_solutions, config.diffusion.emission_rate,
                       config.allomone_rho());
      if ((t - 1) % config.coupling_period == 0) {
        complement_interaction(wasps.graph().allomone, ants.graph());
      }
    }
    if (hooks.before_ants) hooks.before_ants(t, ants, wasps);

    std::vector<FeatureSubset> ant_solutions = ants.construct(problem, t);
    std::size_t kills = 0;
    if (config.competition) {
      kills = kill_check(ants.agents(), ant_solutions, ants.graph(), config.diffusion, t, kill);
    }
    std::vector<FeatureSubset> survivors;
    survivors.reserve(ant_solutions.size());
    for (std::size_t k = 0; k < ant_solutions.size(); ++k) {
      if (ants.agents()[k].alive) survivors.push_back(std::move(ant_solutions[k]));
    }
    recorder.record(survivors, kills);
    ants.update(survivors, t, recorder.best());

    if (config.competition && config.wasp_mode == WaspMode::search) {
      std::size_t b = iteration_best(wasp_solutions);
      if (b < wasp_solutions.size() &&
          (wasp_best.empty() || wasp_solutions[b].size() < wasp_best.front().size())) {
        wasp_best = {wasp_solutions[b]};
      }
      wasps.update(wasp_solutions, t, wasp_best.empty() ? nullptr : &wasp_best.front());
    }
  }
  return recorder.finish(problem.full_gamma(), start);
}

/// True iff run_aco and run_caco with competition disabled agree on every
/// field except wallclock under the same seed.
inline bool degeneration_check(const Dataset& ds, ColonyConfig ant_config, std::uint64_t seed) {
  ant_config.seed = seed;
  CacoConfig caco = CacoConfig::symmetric(ant_config);
  caco.competition = false;
  return run_aco(ds, ant_config).same_outcome(run_caco(ds, caco));
}

}  // namespace caco
