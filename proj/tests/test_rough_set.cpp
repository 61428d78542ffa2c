#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

#include "caco/rough_set.hpp"
#include "test_util.hpp"

using namespace caco;
using caco::testing::duplicated_column_toy;
using caco::testing::bench_dataset;
using caco::testing::table;

namespace {

FeatureSubset random_subset(std::size_t n, std::mt19937_64& rng) {
  FeatureSubset s;
  for (std::size_t i = 0; i < n; ++i) {
    if (rng() % 2) s.insert(i);
  }
  return s;
}

Dataset relabel(const Dataset& ds, const std::vector<std::size_t>& perm) {
  Dataset out = ds;
  for (std::size_t r = 0; r < ds.n_instances(); ++r) {
    for (std::size_t a = 0; a < perm.size(); ++a) out.instances[r][perm[a]] = ds.instances[r][a];
  }
  for (std::size_t a = 0; a < perm.size(); ++a) out.symbol_names[perm[a]] = ds.symbol_names[a];
  return out;
}

std::string stem_for(const std::string& name) {
  if (name == "Breast Cancer") return "breast-cancer";
  std::string s = name;
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

}  // namespace

TEST(EquivalenceClasses, FullDiscernibility) {
  Dataset ds = table("a,x,0\nb,x,1\nc,y,0\n", 2);
  EXPECT_EQ(equivalence_classes(ds, FeatureSubset::full(2)).size(), 3u);
}

TEST(EquivalenceClasses, EmptySubsetIsOneClass) {
  Dataset ds = bench_dataset("vote");
  auto classes = equivalence_classes(ds, {});
  ASSERT_EQ(classes.size(), 1u);
  EXPECT_EQ(classes[0].size(), ds.n_instances());
}

TEST(EquivalenceClasses, HandEnumeration) {
  Dataset ds = table("a,x,0\na,y,0\nb,x,0\na,x,0\n", 2);
  auto classes = equivalence_classes(ds, {0});
  EXPECT_EQ(classes, (std::vector<std::vector<std::size_t>>{{0, 1, 3}, {2}}));
}

TEST(EquivalenceClasses, RefinementNeverMerges) {
  Dataset ds = bench_dataset("audiology");
  std::mt19937_64 rng(3);
  DependencyEvaluator eval(ds);
  for (int trial = 0; trial < 50; ++trial) {
    FeatureSubset s = random_subset(ds.n_condition_attributes, rng);
    std::size_t extra = rng() % ds.n_condition_attributes;
    Partition before = eval.partition(s);
    Partition after = before;
    eval.refine(after, extra);
    EXPECT_GE(after.n_classes(), before.n_classes());
    for (std::size_t i = 0; i < ds.n_instances(); ++i) {
      for (std::size_t j = i + 1; j < ds.n_instances(); j += 7) {
        if (after.class_of(i) == after.class_of(j)) {
          EXPECT_EQ(before.class_of(i), before.class_of(j));
        }
      }
    }
  }
}

TEST(DependencyDegree, ConsistentFullSetIsOne) {
  Dataset ds = bench_dataset("mushroom");
  auto rep = dependency_degree(ds, FeatureSubset::full(ds.n_condition_attributes));
  EXPECT_EQ(rep.gamma, 1.0);
  EXPECT_EQ(rep.positive_region_size, ds.n_instances());
  EXPECT_EQ(rep.full_gamma, 1.0);
}

TEST(DependencyDegree, EmptySubsetWithTwoDecisionsIsZero) {
  EXPECT_EQ(dependency_degree(bench_dataset("vote"), {}).gamma, 0.0);
}

TEST(DependencyDegree, HandExample) {
  Dataset ds = table("a,+\na,-\nb,+\nc,-\n", 1);
  auto rep = dependency_degree(ds, {0});
  EXPECT_EQ(rep.gamma, 0.5);
  EXPECT_EQ(rep.positive_region_size, 2u);
}

TEST(DependencyDegree, InconsistentTableFullGammaBelowOne) {
  Dataset ds = table("a,+\na,-\nb,+\n", 1);
  auto rep = dependency_degree(ds, {0});
  EXPECT_NEAR(rep.full_gamma, 1.0 / 3.0, 1e-15);
  EXPECT_EQ(rep.positive_region_size, 1u);
}

TEST(DependencyDegree, Monotonicity) {
  for (const char* stem : {"breast-cancer", "vote", "audiology", "wine"}) {
    Dataset ds = bench_dataset(stem);
    DependencyEvaluator eval(ds);
    std::mt19937_64 rng(17);
    const std::size_t full = eval.positive_count(FeatureSubset::full(ds.n_condition_attributes));
    for (int trial = 0; trial < 100; ++trial) {
      FeatureSubset a = random_subset(ds.n_condition_attributes, rng);
      FeatureSubset b = a;
      for (std::size_t i = 0; i < ds.n_condition_attributes; ++i) {
        if (rng() % 3 == 0) b.insert(i);
      }
      std::size_t pa = eval.positive_count(a), pb = eval.positive_count(b);
      EXPECT_LE(pa, pb) << stem;
      EXPECT_LE(pb, full) << stem;
    }
  }
}

TEST(DependencyDegree, RowPermutationInvariance) {
  Dataset ds = bench_dataset("breast-cancer");
  std::mt19937_64 rng(5);
  std::vector<std::size_t> order(ds.n_instances());
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  Dataset shuffled = permute_rows(ds, order);
  for (int trial = 0; trial < 50; ++trial) {
    FeatureSubset s = random_subset(ds.n_condition_attributes, rng);
    EXPECT_EQ(dependency_degree(ds, s).positive_region_size,
              dependency_degree(shuffled, s).positive_region_size);
  }
}

TEST(DependencyDegree, AttributeRelabelingInvariance) {
  Dataset ds = bench_dataset("vote");
  std::mt19937_64 rng(9);
  std::vector<std::size_t> perm(ds.n_condition_attributes);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  Dataset moved = relabel(ds, perm);
  for (int trial = 0; trial < 50; ++trial) {
    FeatureSubset s = random_subset(ds.n_condition_attributes, rng);
    FeatureSubset t;
    for (std::size_t i : s) t.insert(perm[i]);
    EXPECT_EQ(dependency_degree(ds, s).gamma, dependency_degree(moved, t).gamma);
  }
}

TEST(PositiveRegionCache, MemoisesAndAgrees) {
  Dataset ds = bench_dataset("vote");
  PositiveRegionCache cache(ds);
  DependencyEvaluator eval(ds);
  FeatureSubset s{0, 3, 7};
  EXPECT_EQ(cache(s), eval.positive_count(s));
  EXPECT_EQ(cache(s), eval.positive_count(s));
  EXPECT_EQ(cache.size(), 1u);
  EXPECT_EQ(cache.hits(), 1u);
}

TEST(ReductValidity, RedundantDuplicateIsNotMinimal) {
  Dataset ds = duplicated_column_toy();
  auto v = is_valid_reduct(ds, FeatureSubset::full(ds.n_condition_attributes));
  EXPECT_FALSE(v.valid);
  EXPECT_FALSE(v.reason.empty());
  EXPECT_TRUE(is_valid_reduct(ds, {2}).valid);
  EXPECT_TRUE(is_valid_reduct(ds, {0, 1}).valid);
  EXPECT_FALSE(is_valid_reduct(ds, {0}).valid);
}

TEST(BruteForce, SingleDeterminingAttribute) {
  Dataset ds = table("a,x,0,p,0\nb,x,1,p,1\nb,y,2,q,2\na,y,3,q,3\n", 4);
  // Decision equals attribute 2.
  EXPECT_EQ(brute_force_min_reduct(ds), FeatureSubset{2});
}

TEST(BruteForce, SingleDeterminingAttributeThree) {
  Dataset ds = table("a,x,u,0,0\na,x,v,1,1\nb,y,u,2,2\nb,x,u,1,1\n", 4);
  EXPECT_EQ(brute_force_min_reduct(ds), FeatureSubset{3});
}

TEST(BruteForce, LexicographicTieBreak) {
  EXPECT_EQ(brute_force_min_reduct(duplicated_column_toy()), FeatureSubset{2});
}

TEST(BruteForce, GuardExceeded) {
  EXPECT_THROW(brute_force_min_reduct(bench_dataset("audiology")), OracleGuardExceeded);
  EXPECT_THROW(brute_force_min_reduct(bench_dataset("mushroom")), OracleGuardExceeded);
}

TEST(BruteForce, CombinationOrderIsLexicographic) {
  std::vector<std::vector<std::size_t>> seen;
  for_each_combination(4, 2, [&](const std::vector<std::size_t>& c) {
    seen.push_back(c);
    return false;
  });
  EXPECT_EQ(seen, (std::vector<std::vector<std::size_t>>{
                      {0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}));
}

TEST(BruteForce, MatchesFrozenFixtures) {
  std::ifstream in(caco::testing::fixture_dir() + "/oracle_minima.txt");
  ASSERT_TRUE(in);
  auto records = read_oracle_records(in);
  ASSERT_EQ(records.size(), 4u);
  for (const auto& rec : records) {
    auto m = caco::testing::manifest(stem_for(rec.dataset));
    Dataset ds = m.load();
    EXPECT_EQ(rec.discretization, m.numeric_columns.empty() ? "none" : m.discretization.describe());
    FeatureSubset got = brute_force_min_reduct(ds, 22);
    EXPECT_EQ(got, rec.reduct) << rec.dataset;
    EXPECT_EQ(dependency_degree(ds, got).gamma, rec.gamma) << rec.dataset;
    EXPECT_TRUE(is_valid_reduct(ds, got).valid) << rec.dataset;
  }
}

TEST(BruteForce, OracleConsistencyOnRandomTables) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t attrs = 2 + rng() % 6, rows = 4 + rng() % 20;
    std::string csv;
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t a = 0; a < attrs; ++a) csv += std::to_string(rng() % 3) + ",";
      csv += std::to_string(rng() % 2) + "\n";
    }
    Dataset ds = table(csv, attrs);
    FeatureSubset best = brute_force_min_reduct(ds);
    EXPECT_TRUE(is_valid_reduct(ds, best).valid) << csv;
    // No smaller subset reaches the full positive region.
    DependencyEvaluator eval(ds);
    const std::size_t full = eval.positive_count(FeatureSubset::full(attrs));
    for (std::size_t k = 0; k < best.size(); ++k) {
      for_each_combination(attrs, k, [&](const std::vector<std::size_t>& c) {
        EXPECT_LT(eval.positive_count(FeatureSubset(c)), full);
        return false;
      });
    }
  }
}

TEST(OracleRecords, RoundTrip) {
  OracleRecord rec{"Wine", "equal-frequency/3", {0, 1, 6, 9, 12}, 1.0};
  std::stringstream ss;
  ss << "# comment\n";
  write_oracle_record(ss, rec);
  auto back = read_oracle_records(ss);
  ASSERT_EQ(back.size(), 1u);
  EXPECT_EQ(back[0], rec);
  std::istringstream bad("Wine\tx\n");
  EXPECT_THROW(read_oracle_records(bad), DatasetError);
}
