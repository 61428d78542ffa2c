#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "caco/bench.hpp"
#include "caco/caco.hpp"
#include "caco/manifest.hpp"
#include "caco/semiochemical.hpp"

namespace {

std::string default_dataset_dir() {
  if (const char* env = std::getenv("CACO_DATASET_DIR"); env && *env) return env;
  return "datasets";
}

std::string fold(const std::string& s) {
  std::string o;
  for (char c : s) {
    if (std::isalnum(static_cast<unsigned char>(c))) o += static_cast<char>(std::tolower(c));
  }
  return o;
}

// Matches a manifest path, a display name, or a manifest/data file stem,
// ignoring case, spaces and punctuation.
caco::DatasetManifest find_dataset(const std::string& dir, const std::string& key) {
  if (std::filesystem::path(key).extension() == ".json" && std::filesystem::exists(key)) {
    return caco::load_manifest(key);
  }
  const std::string k = fold(key);
  for (const auto& m : caco::load_manifest_dir(dir)) {
    if (fold(m.name) == k || fold(std::filesystem::path(m.manifest_path).stem().string()) == k ||
        fold(std::filesystem::path(m.path).stem().string()) == k) {
      return m;
    }
  }
  throw caco::DatasetError("no dataset '" + key + "' in " + dir);
}

std::vector<caco::DatasetManifest> resolve_datasets(const std::string& dir,
                                                    const std::vector<std::string>& keys) {
  if (keys.empty()) return caco::load_manifest_dir(dir);
  std::vector<caco::DatasetManifest> out;
  for (const auto& k : keys) out.push_back(find_dataset(dir, k));
  return out;
}

struct Flags {
  caco::ColonyConfig colony;
  caco::CacoConfig caco;
  std::size_t wasp_agents = 10;
  double k_scale = 0.0;
  CLI::Option* k_scale_opt = nullptr;
  double allomone_rho = 0.0;
  CLI::Option* allomone_opt = nullptr;
  bool no_competition = false;

  void add(CLI::App* app) {
    app->add_option("--evaporation,--rho", colony.evaporation, "pheromone evaporation rho")
        ->capture_default_str();
    app->add_option("--aging", colony.aging, "deposit scale")->capture_default_str();
    app->add_option("--limit", colony.tau_limit, "upper trail bound")->capture_default_str();
    app->add_option("--agents", colony.n_agents, "ants per colony")->capture_default_str();
    app->add_option("--wasp-agents", wasp_agents, "wasps per colony")->capture_default_str();
    app->add_option("--alpha", colony.alpha)->capture_default_str();
    app->add_option("--beta", colony.beta)->capture_default_str();
    app->add_option("--iterations", colony.iterations)->capture_default_str();
    app->add_option("--epsilon", colony.heuristic_epsilon, "heuristic offset")
        ->capture_default_str();
    app->add_option("--global-best-period", colony.global_best_period, "0 disables")
        ->capture_default_str();
    app->add_option("--emission,-Q", caco.diffusion.emission_rate, "emission rate Q")
        ->capture_default_str();
    app->add_option("--diffusion,-D", caco.diffusion.diffusion, "diffusion coefficient D")
        ->capture_default_str();
    app->add_option("--radius,-r", caco.diffusion.radius, "active-space radius r")
        ->capture_default_str();
    app->add_option("--threshold", caco.diffusion.threshold,
                    "threshold concentration K (validated, unused by the kill rule)")
        ->capture_default_str();
    app->add_option("--t-unit", caco.time_unit, "seconds per iteration")->capture_default_str();
    k_scale_opt = app->add_option("--k-scale", k_scale, "K(t) multiplier (default 2 pi D r / rho_a)");
    allomone_opt = app->add_option("--allomone-rho", allomone_rho, "allomone evaporation (default rho)");
    app->add_flag("--listing-formula", caco.listing_formula, "use the listing's K(t) variant");
    app->add_option("--coupling-period", caco.coupling_period)->capture_default_str();
    app->add_flag("--no-competition", no_competition, "disable allomone, coupling and kills");
  }

  void finish() {
    if (k_scale_opt->count()) caco.k_scale = k_scale;
    if (allomone_opt->count()) caco.allomone_evaporation = allomone_rho;
    caco.competition = !no_competition;
  }

  caco::BenchSpec spec() const {
    caco::BenchSpec s;
    s.colony = colony;
    s.caco = caco;
    s.wasp_agents = wasp_agents;
    return s;
  }
};

void print_run(std::ostream& os, const caco::RunResult& r, bool history) {
  os << "seed\t" << r.seed << "\n";
  os << "best_subset\t" << (r.found ? r.best_subset.to_string() : "none") << "\n";
  os << "best_size\t" << r.best_size << "\n";
  os << "best_gamma\t" << caco::format_number(r.best_gamma) << "\n";
  os << "total_kills\t" << r.total_kills << "\n";
  os << "iterations\t" << r.history.size() << "\n";
  os << "wallclock_ms\t"
     << caco::format_number(std::chrono::duration<double, std::milli>(r.wallclock).count()) << "\n";
  if (!history) return;
  os << "iteration\tbest_size\tmean_size\tkills\tbest_subset\n";
  for (std::size_t t = 0; t < r.history.size(); ++t) {
    const auto& h = r.history[t];
    os << t + 1 << "\t" << h.best_size << "\t" << caco::format_number(h.mean_size) << "\t"
       << h.kills << "\t" << h.best_subset.to_string() << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ant colony and competitive ant colony reduct search"};
  app.require_subcommand(1);
  std::string dataset_dir = default_dataset_dir();
  app.add_option("--dataset-dir", dataset_dir, "manifest directory (env CACO_DATASET_DIR)")
      ->capture_default_str();

  // bench
  auto* bench = app.add_subcommand("bench", "seeded ACO vs CACO comparison table");
  Flags bench_flags;
  bench_flags.add(bench);
  std::vector<std::string> bench_datasets;
  std::vector<std::string> bench_algorithms{"aco", "caco"};
  std::size_t seeds = 10;
  std::uint64_t base_seed = 1;
  std::string format = "tsv";
  std::string output;
  std::size_t jobs = std::max(1u, std::thread::hardware_concurrency());
  bool timing = false;
  auto add_bench_options = [&](CLI::App* sub) {
    sub->add_option("--datasets", bench_datasets, "names or manifests (default: all)");
    sub->add_option("--algorithms", bench_algorithms, "aco, caco, caco-static")
        ->capture_default_str();
    sub->add_option("--seeds", seeds, "runs per dataset and algorithm")->capture_default_str();
    sub->add_option("--base-seed", base_seed)->capture_default_str();
    sub->add_option("--jobs,-j", jobs, "worker threads")->capture_default_str();
  };
  add_bench_options(bench);
  bench->add_option("--format", format)
      ->check(CLI::IsMember({"tsv", "csv", "table"}))
      ->capture_default_str();
  bench->add_option("--output,-o", output, "write to file instead of stdout");
  bench->add_flag("--timing", timing, "add median wallclock columns");

  // run
  auto* run = app.add_subcommand("run", "single run, prints the RunResult");
  Flags run_flags;
  run_flags.add(run);
  std::string run_dataset;
  std::string run_algorithm = "caco";
  std::uint64_t run_seed = 1;
  bool run_history = false;
  run->add_option("dataset", run_dataset, "dataset name or manifest")->required();
  run->add_option("--algorithm,-a", run_algorithm)
      ->check(CLI::IsMember({"aco", "caco", "caco-static"}))
      ->capture_default_str();
  run->add_option("--seed", run_seed)->capture_default_str();
  run->add_flag("--history", run_history, "print per-iteration history");

  // oracle
  auto* oracle = app.add_subcommand("oracle", "exact minimum reducts vs bench results");
  Flags oracle_flags;
  oracle_flags.add(oracle);
  add_bench_options(oracle);
  std::size_t guard = 20;
  oracle->add_option("--guard", guard, "max condition attributes to enumerate")
      ->capture_default_str();

  // diffusion
  auto* diffusion = app.add_subcommand("diffusion", "K(t) over a time grid");
  caco::DiffusionParams dp;
  double t_min = 0.25, t_max = 250.0;
  std::size_t steps = 100;
  bool listing = false;
  diffusion->add_option("--emission,-Q", dp.emission_rate)->capture_default_str();
  diffusion->add_option("--diffusion,-D", dp.diffusion)->capture_default_str();
  diffusion->add_option("--radius,-r", dp.radius)->capture_default_str();
  diffusion->add_option("--t-min", t_min)->capture_default_str();
  diffusion->add_option("--t-max", t_max)->capture_default_str();
  diffusion->add_option("--steps", steps, "grid points")->capture_default_str()->check(
      CLI::PositiveNumber);
  diffusion->add_flag("--listing-formula", listing);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*bench || *oracle) {
      Flags& f = *bench ? bench_flags : oracle_flags;
      f.finish();
      caco::BenchSpec spec = f.spec();
      if (bench_algorithms.empty()) {
        std::cerr << "error: --algorithms must name at least one algorithm\n";
        return 2;
      }
      spec.algorithms.clear();
      for (const auto& a : bench_algorithms) spec.algorithms.push_back(caco::parse_algorithm(a));
      spec.n_seeds = seeds;
      spec.base_seed = base_seed;
      spec.jobs = jobs;
      spec.timing = timing;
      spec.format = caco::parse_format(format);
      spec.datasets = resolve_datasets(dataset_dir, bench_datasets);
      spec.validate();
      caco::BenchResult result = caco::run_bench(spec);
      if (*bench) {
        if (output.empty()) {
          caco::write_bench(std::cout, spec, result);
        } else {
          std::ofstream out(output);
          if (!out) throw std::runtime_error("cannot write '" + output + "'");
          caco::write_bench(out, spec, result);
        }
      } else {
        caco::write_oracle(std::cout, caco::oracle_report(spec, result, guard));
      }
      for (const auto& row : result.rows) {
        if (row.failed) std::cerr << "failed: " << row.name << ": " << row.error << "\n";
      }
      return result.any_failed() ? 1 : 0;
    }
    if (*run) {
      run_flags.finish();
      caco::BenchSpec spec = run_flags.spec();
      caco::Dataset ds = find_dataset(dataset_dir, run_dataset).load();
      caco::Algorithm a = caco::parse_algorithm(run_algorithm);
      caco::RunResult r = a == caco::Algorithm::aco ? caco::run_aco(ds, spec.aco_config(run_seed))
                                                    : caco::run_caco(ds, spec.caco_config(run_seed, a));
      std::cout << "dataset\t" << ds.name << "\n";
      std::cout << "algorithm\t" << caco::to_string(a) << "\n";
      print_run(std::cout, r, run_history);
      return 0;
    }
    if (*diffusion) {
      dp.validate();
      if (!(t_min > 0.0) || !(t_max >= t_min)) throw std::invalid_argument("need 0 < t-min <= t-max");
      std::cout << "t\tK\n";
      for (std::size_t k = 0; k < steps; ++k) {
        double t = steps == 1 ? t_min
                              : t_min + (t_max - t_min) * static_cast<double>(k) /
                                            static_cast<double>(steps - 1);
        double K = listing ? caco::listing_concentration(dp, t) : caco::active_space_concentration(dp, t);
        std::cout << caco::format_number(t) << "\t" << std::setprecision(12) << K << "\n";
      }
      return 0;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
