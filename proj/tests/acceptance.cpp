#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "caco/bench.hpp"
#include "caco/caco.hpp"
#include "caco/erfc.hpp"
#include "caco/manifest.hpp"
#include "caco/rough_set.hpp"
#include "caco/semiochemical.hpp"
#include "erfc_reference.hpp"

using namespace caco;
using Clock = std::chrono::steady_clock;

namespace {

constexpr double kDegenerationBudgetS = 120.0;
constexpr double kOracleBudgetS = 60.0;
constexpr double kOracleBenchBudgetS = 300.0;
constexpr double kFullBenchBudgetS = 600.0;
constexpr double kErfcTolerance = 1e-12;
constexpr double kAsymptoteTolerance = 1e-9;
constexpr std::size_t kOracleSlack = 1;
constexpr std::size_t kDirectionalNeeded = 4;

struct PublishedRow {
  const char* name;
  double aco, caco, tolerance;
};

constexpr PublishedRow kTable[] = {
    {"Audiology", 20, 12, 5},
    {"Breast Cancer", 4, 4, 2},
    {"Mushroom", 6, 5, 2},
    {"Wine", 6, 5, 2},
    {"Vote", 12, 10, 2},
};

int failures = 0;

void report(int id, const char* title, bool pass, const std::string& detail) {
  std::printf("[%s] %d %s: %s\n", pass ? "PASS" : "FAIL", id, title, detail.c_str());
  std::fflush(stdout);
  failures += !pass;
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double v) { return format_number(v); }

std::vector<DatasetManifest> bench_manifests() { return load_manifest_dir(CACO_DATASET_DIR); }

BenchSpec full_spec(std::size_t jobs) {
  BenchSpec spec;
  spec.datasets = bench_manifests();
  spec.n_seeds = 10;
  spec.base_seed = 1;
  spec.jobs = jobs;
  return spec;
}

std::string render(const BenchSpec& spec, const BenchResult& r) {
  std::ostringstream os;
  write_bench(os, spec, r);
  return os.str();
}

void degeneration() {
  auto start = Clock::now();
  std::size_t agree = 0, total = 0;
  std::string mismatched;
  for (const auto& m : bench_manifests()) {
    Dataset ds = m.load();
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      ++total;
      if (degeneration_check(ds, ColonyConfig{}, seed)) {
        ++agree;
      } else {
        mismatched += " " + m.name + "/" + std::to_string(seed);
      }
    }
  }
  double s = seconds_since(start);
  report(1, "degeneration equivalence", agree == total && s < kDegenerationBudgetS,
         std::to_string(agree) + "/" + std::to_string(total) + " identical RunResults, " + fmt(s) +
             " s (budget " + fmt(kDegenerationBudgetS) + " s)" + mismatched);
}

void validity(const BenchSpec& spec, const BenchResult& r) {
  std::size_t ok = 0, total = 0;
  std::string bad;
  for (std::size_t d = 0; d < spec.datasets.size(); ++d) {
    for (std::size_t a = 0; a < spec.algorithms.size(); ++a) {
      for (std::size_t k = 0; k < spec.n_seeds; ++k) {
        const RunOutcome& o = r.runs[d][a][k];
        ++total;
        if (o.ok && o.result.found && o.feasible && o.valid) {
          ++ok;
        } else {
          bad += " " + spec.datasets[d].name + "/" + to_string(spec.algorithms[a]) + "/" +
                 std::to_string(spec.seed(k));
        }
      }
    }
  }
  report(2, "reduct validity", ok == total,
         std::to_string(ok) + "/" + std::to_string(total) +
             " best subsets with full gamma and single-deletion minimality" + bad);
}

void oracle_attainment(const BenchSpec& spec, const BenchResult& r, double bench_s) {
  bool pass = bench_s < kOracleBenchBudgetS;
  std::string detail;
  for (const char* name : {"Breast Cancer", "Wine"}) {
    std::size_t d = 0;
    while (spec.datasets[d].name != name) ++d;
    auto start = Clock::now();
    FeatureSubset minimum = brute_force_min_reduct(spec.datasets[d].load());
    double s = seconds_since(start);
    const AlgoStats* caco = r.rows[d].find(Algorithm::caco);
    bool ok = caco && !caco->sizes.empty() &&
              caco->median <= static_cast<double>(minimum.size() + kOracleSlack) &&
              s < kOracleBudgetS;
    pass &= ok;
    detail += std::string(name) + " oracle " + std::to_string(minimum.size()) + " " +
              minimum.to_string() + " in " + fmt(s) + " s, CACO median " +
              (caco ? fmt(caco->median) : "NA") + "; ";
  }
  detail += "bench " + fmt(bench_s) + " s (budget " + fmt(kOracleBenchBudgetS) + " s)";
  report(3, "oracle attainment", pass, detail);
}

void table_reproduction(const BenchSpec& spec, const BenchResult& r) {
  std::size_t directional = 0;
  bool absolute = true;
  std::string detail, misses;
  for (const auto& row : kTable) {
    std::size_t d = 0;
    while (d < spec.datasets.size() && spec.datasets[d].name != row.name) ++d;
    if (d == spec.datasets.size() || r.rows[d].failed) {
      absolute = false;
      misses += std::string(" ") + row.name + " missing;";
      continue;
    }
    const AlgoStats* aco = r.rows[d].find(Algorithm::aco);
    const AlgoStats* caco = r.rows[d].find(Algorithm::caco);
    directional += caco->median <= aco->median;
    detail += std::string(row.name) + " " + fmt(aco->median) + "/" + fmt(caco->median) + " (published " +
              fmt(row.aco) + "/" + fmt(row.caco) + "); ";
    if (std::abs(aco->median - row.aco) > row.tolerance) {
      absolute = false;
      misses += std::string(" ") + row.name + " ACO off by " + fmt(aco->median - row.aco) + ";";
    }
    if (std::abs(caco->median - row.caco) > row.tolerance) {
      absolute = false;
      misses += std::string(" ") + row.name + " CACO off by " + fmt(caco->median - row.caco) + ";";
    }
  }
  bool dir_ok = directional >= kDirectionalNeeded;
  report(4, "table reproduction", dir_ok && absolute,
         "CACO <= ACO on " + std::to_string(directional) + "/5 (need " +
             std::to_string(kDirectionalNeeded) + ") " + (dir_ok ? "ok" : "FAIL") +
             "; absolute " + (absolute ? "ok" : "FAIL:" + misses) + " | medians ACO/CACO: " +
             detail);
}

void diffusion_numerics() {
  double worst_erfc = 0.0;
  for (const auto& ref : testing::kErfcReference) {
    worst_erfc = std::max(worst_erfc, std::abs(caco::erfc(ref.x) - static_cast<double>(ref.value)));
  }
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> logu(-2.0, 2.0);
  bool increasing = true;
  double worst_asymptote = 0.0;
  const int points = 200;
  for (int k = 0; k < points; ++k) {
    DiffusionParams p{std::pow(10.0, logu(rng)), std::pow(10.0, logu(rng)),
                      std::pow(10.0, logu(rng)), 1.0};
    const double t0 = p.radius * p.radius / (4.0 * p.diffusion) / 25.0;
    double prev = active_space_concentration(p, t0);
    for (int s = 1; s <= 60; ++s) {
      double v = active_space_concentration(p, t0 * std::pow(1.3, s));
      increasing &= v > prev;
      prev = v;
    }
    const double cap = asymptotic_concentration(p);
    const double t_large = p.radius * p.radius / (4.0 * p.diffusion) * 1e20;
    worst_asymptote =
        std::max(worst_asymptote, std::abs(active_space_concentration(p, t_large) - cap) / cap);
  }
  bool pass = worst_erfc <= kErfcTolerance && increasing && worst_asymptote <= kAsymptoteTolerance;
  std::ostringstream d;
  d << "erfc max error " << worst_erfc << " over 25 points (tol " << kErfcTolerance << "); K(t) "
    << (increasing ? "strictly increasing" : "NOT increasing") << " on " << points
    << " parameter sets; asymptote max rel error " << worst_asymptote << " (tol "
    << kAsymptoteTolerance << ")";
  report(5, "diffusion numerics", pass, d.str());
}

}  // namespace

int main() {
  const unsigned cores = std::max(1u, std::thread::hardware_concurrency());
  std::printf("acceptance: %u hardware threads\n", cores);

  diffusion_numerics();
  degeneration();

  BenchSpec parallel = full_spec(4);
  auto start = Clock::now();
  BenchResult result = run_bench(parallel);
  const double bench_s = seconds_since(start);

  validity(parallel, result);
  oracle_attainment(parallel, result, bench_s);
  table_reproduction(parallel, result);

  BenchSpec sequential = full_spec(1);
  BenchResult again = run_bench(sequential);
  const std::string a = render(parallel, result), b = render(sequential, again);
  report(6, "determinism", a == b && !result.any_failed(),
         std::string(a == b ? "byte-identical" : "DIFFERENT") + " bench output, 4 workers vs 1 (" +
             std::to_string(a.size()) + " bytes)");

  report(7, "runtime envelope", bench_s < kFullBenchBudgetS,
         "full 5x10x2 bench in " + fmt(bench_s) + " s with 4 workers on " + std::to_string(cores) +
             " hardware threads (budget " + fmt(kFullBenchBudgetS) + " s)");

  std::cout << "\n" << a;
  std::printf("\nacceptance: %d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
