#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "caco/aco.hpp"
#include "caco/caco.hpp"
#include "caco/manifest.hpp"
#include "caco/rough_set.hpp"

namespace caco {

enum class Algorithm { aco, caco, caco_static };

inline const char* to_string(Algorithm a) {
  switch (a) {
    case Algorithm::aco: return "aco";
    case Algorithm::caco: return "caco";
    case Algorithm::caco_static: return "caco-static";
  }
  return "?";
}

inline Algorithm parse_algorithm(const std::string& s) {
  if (s == "aco") return Algorithm::aco;
  if (s == "caco") return Algorithm::caco;
  if (s == "caco-static" || s == "caco_static") return Algorithm::caco_static;
  throw std::invalid_argument("unknown algorithm '" + s + "' (aco, caco, caco-static)");
}

enum class OutputFormat { tsv, csv, table };

inline OutputFormat parse_format(const std::string& s) {
  if (s == "tsv") return OutputFormat::tsv;
  if (s == "csv") return OutputFormat::csv;
  if (s == "table") return OutputFormat::table;
  throw std::invalid_argument("unknown format '" + s + "' (tsv, csv, table)");
}

/// Shortest round-trippable-enough rendering used in every report cell.
inline std::string format_number(double v) {
  std::ostringstream os;
  os << std::setprecision(6) << v;
  return os.str();
}

inline std::string describe(const ColonyConfig& c) {
  std::ostringstream os;
  os << "rho=" << format_number(c.evaporation) << " aging=" << format_number(c.aging)
     << " limit=" << format_number(c.tau_limit) << " agents=" << c.n_agents
     << " alpha=" << format_number(c.alpha) << " beta=" << format_number(c.beta)
     << " iterations=" << c.iterations << " epsilon=" << format_number(c.heuristic_epsilon)
     << " global_best_period=" << c.global_best_period;
  return os.str();
}

inline std::string describe(const CacoConfig& c) {
  std::ostringstream os;
  os << "Q=" << format_number(c.diffusion.emission_rate)
     << " D=" << format_number(c.diffusion.diffusion) << " r=" << format_number(c.diffusion.radius)
     << " t_unit=" << format_number(c.time_unit)
     << " k_scale=" << format_number(c.resolved_k_scale())
     << " allomone_rho=" << format_number(c.allomone_rho())
     << " coupling_period=" << c.coupling_period
     << " formula=" << (c.listing_formula ? "listing" : "erfc")
     << " competition=" << (c.competition ? "on" : "off");
  return os.str();
}

struct BenchSpec {
  std::vector<DatasetManifest> datasets;
  std::vector<Algorithm> algorithms{Algorithm::aco, Algorithm::caco};
  std::size_t n_seeds = 10;
  std::uint64_t base_seed = 1;
  ColonyConfig colony;  // ant colony; also the ACO baseline
  CacoConfig caco;      // ant/wasp members are overwritten per run except wasp sizes
  std::size_t wasp_agents = 10;
  OutputFormat format = OutputFormat::tsv;
  std::size_t jobs = 1;
  bool timing = false;  // wallclock columns break byte-identical output

  void validate() const {
    if (datasets.empty()) throw std::invalid_argument("bench needs at least one dataset");
    if (algorithms.empty()) throw std::invalid_argument("bench needs at least one algorithm");
    if (n_seeds < 1) throw std::invalid_argument("n_seeds must be >= 1");
    if (wasp_agents < 1) throw std::invalid_argument("wasp agents must be >= 1");
    colony.validate();
    caco_config(base_seed, Algorithm::caco).validate();
  }

  std::uint64_t seed(std::size_t run_index) const { return base_seed + run_index; }

  ColonyConfig aco_config(std::uint64_t seed) const {
    ColonyConfig c = colony;
    c.seed = seed;
    return c;
  }

  CacoConfig caco_config(std::uint64_t seed, Algorithm a) const {
    CacoConfig c = caco;
    c.ant = aco_config(seed);
    c.wasp = c.ant;
    c.wasp.n_agents = wasp_agents;
    c.wasp_mode = a == Algorithm::caco_static ? WaspMode::static_solutions : WaspMode::search;
    return c;
  }
};

struct RunOutcome {
  bool ok = false;
  std::string error;
  RunResult result;
  bool feasible = false;  // gamma(best) equals full gamma
  bool valid = false;     // feasible and single-deletion minimal
};

inline RunOutcome run_one(const Dataset& ds, const BenchSpec& spec, Algorithm a,
                          std::uint64_t seed) {
  RunOutcome out;
  try {
    out.result = a == Algorithm::aco ? run_aco(ds, spec.aco_config(seed))
                                     : run_caco(ds, spec.caco_config(seed, a));
    if (out.result.found) {
      DependencyEvaluator eval(ds);
      out.feasible = eval.positive_count(out.result.best_subset) ==
                     eval.positive_count(FeatureSubset::full(ds.n_condition_attributes));
      out.valid = is_valid_reduct(ds, out.result.best_subset).valid;
    }
    out.ok = true;
  } catch (const std::exception& e) {
    out.error = e.what();
  }
  return out;
}

struct AlgoStats {
  Algorithm algorithm = Algorithm::aco;
  std::vector<std::size_t> sizes;  // feasible runs only, in seed order
  std::size_t runs = 0;
  double median = 0.0;
  std::size_t min = 0;
  std::size_t max = 0;
  double validity_rate = 0.0;
  double median_kills = 0.0;
  double median_wallclock_ms = 0.0;
  std::vector<FeatureSubset> best_subsets;
};

struct BenchRow {
  std::string name;
  bool failed = false;
  std::string error;
  std::size_t instances = 0;
  std::size_t condition_attributes = 0;
  std::size_t table_features = 0;  // condition attributes + decision
  std::vector<AlgoStats> stats;    // aligned with spec.algorithms

  const AlgoStats* find(Algorithm a) const {
    for (const auto& s : stats) {
      if (s.algorithm == a) return &s;
    }
    return nullptr;
  }
};

template <class T>
double median_of(std::vector<T> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  if (v.size() % 2) return static_cast<double>(v[m]);
  return (static_cast<double>(v[m - 1]) + static_cast<double>(v[m])) / 2.0;
}

inline AlgoStats aggregate(Algorithm a, const std::vector<RunOutcome>& runs) {
  AlgoStats s;
  s.algorithm = a;
  s.runs = runs.size();
  std::vector<std::size_t> kills;
  std::vector<double> wall;
  std::size_t valid = 0;
  for (const auto& r : runs) {
    if (r.ok && r.feasible) {
      s.sizes.push_back(r.result.best_size);
      s.best_subsets.push_back(r.result.best_subset);
    }
    if (r.ok && r.valid) ++valid;
    kills.push_back(r.result.total_kills);
    wall.push_back(std::chrono::duration<double, std::milli>(r.result.wallclock).count());
  }
  if (!s.sizes.empty()) {
    s.median = median_of(s.sizes);
    s.min = *std::min_element(s.sizes.begin(), s.sizes.end());
    s.max = *std::max_element(s.sizes.begin(), s.sizes.end());
  }
  s.validity_rate = runs.empty() ? 0.0 : static_cast<double>(valid) / static_cast<double>(runs.size());
  s.median_kills = median_of(kills);
  s.median_wallclock_ms = median_of(wall);
  return s;
}

struct BenchResult {
  std::vector<BenchRow> rows;
  /// runs[d][a][k]: dataset d, algorithm a (spec order), seed index k.
  std::vector<std::vector<std::vector<RunOutcome>>> runs;

  bool any_failed() const {
    for (const auto& r : rows) {
      if (r.failed) return true;
    }
    return false;
  }
};

/// Runs every (dataset, algorithm, seed) job on `spec.jobs` worker threads.
/// Results are stored by job index, so the aggregate does not depend on the
/// schedule.
inline BenchResult run_bench(const BenchSpec& spec) {
  spec.validate();
  const std::size_t nd = spec.datasets.size();
  const std::size_t na = spec.algorithms.size();
  BenchResult out;
  out.rows.resize(nd);
  out.runs.assign(nd, std::vector<std::vector<RunOutcome>>(na, std::vector<RunOutcome>(spec.n_seeds)));

  std::vector<std::optional<Dataset>> data(nd);
  for (std::size_t d = 0; d < nd; ++d) {
    BenchRow& row = out.rows[d];
    row.name = spec.datasets[d].name;
    try {
      data[d] = spec.datasets[d].load();
      row.instances = data[d]->n_instances();
      row.condition_attributes = data[d]->n_condition_attributes;
      row.table_features = row.condition_attributes + 1;
    } catch (const std::exception& e) {
      row.failed = true;
      row.error = e.what();
    }
  }

  struct Job {
    std::size_t d, a, k;
  };
  std::vector<Job> jobs;
  for (std::size_t d = 0; d < nd; ++d) {
    if (!data[d]) continue;
    for (std::size_t a = 0; a < na; ++a) {
      for (std::size_t k = 0; k < spec.n_seeds; ++k) jobs.push_back({d, a, k});
    }
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t j = next++; j < jobs.size(); j = next++) {
      const Job& job = jobs[j];
      out.runs[job.d][job.a][job.k] =
          run_one(*data[job.d], spec, spec.algorithms[job.a], spec.seed(job.k));
    }
  };
  const std::size_t n_workers = std::max<std::size_t>(1, std::min(spec.jobs, jobs.size()));
  if (n_workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < n_workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  for (std::size_t d = 0; d < nd; ++d) {
    BenchRow& row = out.rows[d];
    if (row.failed) continue;
    for (std::size_t a = 0; a < na; ++a) {
      const auto& runs = out.runs[d][a];
      for (const auto& r : runs) {
        if (!r.ok) {
          row.failed = true;
          if (row.error.empty()) row.error = r.error;
        }
      }
      row.stats.push_back(aggregate(spec.algorithms[a], runs));
    }
  }
  return out;
}

namespace detail {

inline std::vector<std::string> bench_header(const BenchSpec& spec) {
  std::vector<std::string> h{"name", "instances", "features"};
  for (Algorithm a : spec.algorithms) h.push_back(to_string(a));
  h.push_back("condition_attributes");
  for (Algorithm a : spec.algorithms) {
    std::string p = to_string(a);
    for (const char* col : {"_min", "_max", "_validity"}) h.push_back(p + col);
    if (a != Algorithm::aco) h.push_back(p + "_kills");
    if (spec.timing) h.push_back(p + "_ms");
  }
  return h;
}

inline std::vector<std::string> bench_cells(const BenchSpec& spec, const BenchRow& row) {
  std::vector<std::string> c{row.name};
  if (row.failed) {
    c.push_back("FAILED: " + row.error);
    return c;
  }
  c.push_back(std::to_string(row.instances));
  c.push_back(std::to_string(row.table_features));
  for (const auto& s : row.stats) c.push_back(s.sizes.empty() ? "NA" : format_number(s.median));
  c.push_back(std::to_string(row.condition_attributes));
  for (const auto& s : row.stats) {
    c.push_back(s.sizes.empty() ? "NA" : std::to_string(s.min));
    c.push_back(s.sizes.empty() ? "NA" : std::to_string(s.max));
    c.push_back(format_number(s.validity_rate));
    if (s.algorithm != Algorithm::aco) c.push_back(format_number(s.median_kills));
    if (spec.timing) c.push_back(format_number(s.median_wallclock_ms));
  }
  return c;
}

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string o = "\"";
  for (char ch : s) {
    if (ch == '"') o += '"';
    o += ch;
  }
  return o + "\"";
}

}  // namespace detail

/// Writes the comparison table. The leading '#' lines carry the full
/// configuration and seed list needed to replay every run.
inline void write_bench(std::ostream& os, const BenchSpec& spec, const BenchResult& result) {
  os << "# colony " << describe(spec.colony) << "\n";
  os << "# caco " << describe(spec.caco_config(spec.base_seed, Algorithm::caco))
     << " wasp_agents=" << spec.wasp_agents << "\n";
  os << "# seeds " << spec.seed(0) << ".." << spec.seed(spec.n_seeds - 1) << " (n=" << spec.n_seeds
     << ")\n";
  for (const auto& m : spec.datasets) os << "# dataset " << m.name << " " << m.describe() << "\n";

  std::vector<std::vector<std::string>> lines{detail::bench_header(spec)};
  for (const auto& row : result.rows) lines.push_back(detail::bench_cells(spec, row));

  if (spec.format == OutputFormat::table) {
    std::vector<std::size_t> width;
    for (const auto& l : lines) {
      if (l.size() < 3) continue;  // failed rows do not set widths
      width.resize(std::max(width.size(), l.size()), 0);
      for (std::size_t k = 0; k < l.size(); ++k) width[k] = std::max(width[k], l[k].size());
    }
    for (const auto& l : lines) {
      for (std::size_t k = 0; k < l.size(); ++k) {
        if (k) os << "  ";
        if (k + 1 == l.size()) {
          os << l[k];
        } else {
          os << std::left << std::setw(static_cast<int>(k < width.size() ? width[k] : 0)) << l[k];
        }
      }
      os << "\n";
    }
    return;
  }
  const char sep = spec.format == OutputFormat::csv ? ',' : '\t';
  for (const auto& l : lines) {
    for (std::size_t k = 0; k < l.size(); ++k) {
      if (k) os << sep;
      os << (spec.format == OutputFormat::csv ? detail::csv_escape(l[k]) : l[k]);
    }
    os << "\n";
  }
}

struct OracleAttainment {
  Algorithm algorithm = Algorithm::aco;
  double median = 0.0;
  std::size_t attained_runs = 0;  // runs whose best size equals the minimum
  std::size_t runs = 0;
  bool attained = false;  // median best size equals the minimum
};

struct OracleRow {
  std::string name;
  bool skipped = false;
  std::string notice;
  FeatureSubset minimum;
  double gamma = 0.0;
  std::vector<OracleAttainment> algorithms;
};

/// Exact minimum reduct per dataset against the bench's results. Datasets
/// with more condition attributes than `guard` are skipped with a notice.
inline std::vector<OracleRow> oracle_report(const BenchSpec& spec, const BenchResult& result,
                                            std::size_t guard = 20) {
  std::vector<OracleRow> out;
  for (std::size_t d = 0; d < spec.datasets.size(); ++d) {
    OracleRow row;
    row.name = spec.datasets[d].name;
    const BenchRow& br = result.rows[d];
    if (br.failed) {
      row.skipped = true;
      row.notice = "bench row failed: " + br.error;
      out.push_back(std::move(row));
      continue;
    }
    try {
      Dataset ds = spec.datasets[d].load();
      row.minimum = brute_force_min_reduct(ds, guard);
      row.gamma = dependency_degree(ds, row.minimum).gamma;
    } catch (const OracleGuardExceeded& e) {
      row.skipped = true;
      row.notice = e.what();
      out.push_back(std::move(row));
      continue;
    }
    for (const auto& s : br.stats) {
      OracleAttainment at;
      at.algorithm = s.algorithm;
      at.runs = s.runs;
      at.median = s.median;
      for (std::size_t size : s.sizes) at.attained_runs += size == row.minimum.size();
      at.attained = !s.sizes.empty() && s.median == static_cast<double>(row.minimum.size());
      row.algorithms.push_back(at);
    }
    out.push_back(std::move(row));
  }
  return out;
}

inline void write_oracle(std::ostream& os, const std::vector<OracleRow>& rows) {
  os << "name\tminimum\tsize\tgamma";
  if (!rows.empty()) {
    for (const auto& r : rows) {
      if (r.skipped) continue;
      for (const auto& a : r.algorithms) {
        os << "\t" << to_string(a.algorithm) << "_median\t" << to_string(a.algorithm)
           << "_attained";
      }
      break;
    }
  }
  os << "\n";
  for (const auto& r : rows) {
    os << r.name;
    if (r.skipped) {
      os << "\tSKIPPED: " << r.notice << "\n";
      continue;
    }
    os << "\t" << r.minimum.to_string() << "\t" << r.minimum.size() << "\t"
       << format_number(r.gamma);
    for (const auto& a : r.algorithms) {
      os << "\t" << format_number(a.median) << "\t" << (a.attained ? "yes" : "no") << " ("
         << a.attained_runs << "/" << a.runs << ")";
    }
    os << "\n";
  }
}

}  // namespace caco
