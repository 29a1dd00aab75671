#include "citerank/classes.hpp"

#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "citerank/ranking.hpp"
#include "oracles.hpp"

namespace citerank {
namespace {

std::vector<double> ps(const std::vector<ClassFraction>& f) {
  std::vector<double> out;
  for (const auto& c : f) out.push_back(c.p);
  return out;
}

TEST(TopClassMembers, HazenTopDecile) {
  const std::vector<double> hazen{5, 15, 25, 35, 45, 55, 65, 75, 85, 95};
  EXPECT_EQ(top_class_members(hazen, 10.0), (std::vector<std::size_t>{9}));
  EXPECT_EQ(top_class_members(hazen, 100.0).size(), 10u);
}

TEST(TopClassMembers, BoundaryRuleMatters) {
  const std::vector<double> low{0, 10, 20, 30, 40, 50, 60, 70, 80, 90};
  EXPECT_TRUE(top_class_members(low, 10.0, BoundaryRule::Strict).empty());
  EXPECT_EQ(top_class_members(low, 10.0, BoundaryRule::Inclusive), (std::vector<std::size_t>{9}));
}

TEST(TopClassMembers, ThresholdRange) {
  const std::vector<double> s{1, 2};
  EXPECT_THROW(top_class_members(s, 0.0), std::invalid_argument);
  EXPECT_THROW(top_class_members(s, -1.0), std::invalid_argument);
  EXPECT_THROW(top_class_members(s, 100.01), std::invalid_argument);
}

TEST(TopClassMembers, Nesting) {
  std::mt19937_64 rng(41);
  const double xs[] = {1, 5, 10, 25, 50, 100};
  for (int trial = 0; trial < 200; ++trial) {
    const auto c = oracle::heavy_tailed(rng, 1 + trial % 120);
    for (auto a : {Approach::Hazen, Approach::InCites, Approach::P100, Approach::PLow}) {
      const auto s = score(c, {}, ApproachSpec::make(a));
      for (std::size_t k = 0; k + 1 < std::size(xs); ++k) {
        for (auto rule : {BoundaryRule::Inclusive, BoundaryRule::Strict}) {
          const auto small = top_class_members(s, xs[k], rule);
          const auto big = top_class_members(s, xs[k + 1], rule);
          ASSERT_TRUE(std::includes(big.begin(), big.end(), small.begin(), small.end()));
        }
      }
    }
  }
}

TEST(CwtsFractions, BoundaryGroupSharesSlots) {
  const std::vector<std::int64_t> c{9, 7, 7, 7, 3, 2, 1, 0, 0, 0};
  const auto f = cwts_fractions(c, 20.0);
  const std::vector<double> want{1, 1.0 / 3, 1.0 / 3, 1.0 / 3, 0, 0, 0, 0, 0, 0};
  for (std::size_t i = 0; i < c.size(); ++i) {
    EXPECT_NEAR(f[i].p, want[i], 1e-12);
    EXPECT_EQ(f[i].x, 20.0);
  }
  EXPECT_NEAR(expected_top_count(f), 2.0, 1e-12);
}

TEST(CwtsFractions, FullTieAndWholeSet) {
  for (double p : ps(cwts_fractions(std::vector<std::int64_t>{4, 4, 4, 4, 4}, 20.0))) EXPECT_NEAR(p, 0.2, 1e-12);
  for (double p : ps(cwts_fractions(std::vector<std::int64_t>{9, 0, 3, 3}, 100.0))) EXPECT_EQ(p, 1.0);
}

TEST(CwtsFractions, Errors) {
  EXPECT_THROW(cwts_fractions(std::vector<std::int64_t>{1}, 0.0), std::invalid_argument);
  EXPECT_THROW(cwts_fractions(std::vector<std::int64_t>{1}, 101.0), std::invalid_argument);
  EXPECT_THROW(cwts_fractions({}, 10.0), std::invalid_argument);
}

TEST(ExpectedTopCount, Examples) {
  EXPECT_EQ(expected_top_count({}), 0.0);
  auto a = cwts_fractions(std::vector<std::int64_t>{9, 7, 7, 7, 3, 2, 1, 0, 0, 0}, 20.0);
  const auto b = cwts_fractions(std::vector<std::int64_t>{5, 4, 3, 2, 1, 0, 0, 0, 0, 0}, 30.0);
  a.insert(a.end(), b.begin(), b.end());
  EXPECT_NEAR(expected_top_count(a), 5.0, 1e-12);
}

TEST(CwtsFractions, SumAndMonotonicity) {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> xdist(0.0, 100.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto c = oracle::heavy_tailed(rng, 1 + trial % 200);
    double x = xdist(rng);
    if (x == 0.0) x = 1.0;
    const auto f = cwts_fractions(c, x);
    ASSERT_NEAR(expected_top_count(f), static_cast<double>(c.size()) * x / 100.0, 1e-9);
    for (std::size_t i = 0; i < c.size(); ++i) {
      ASSERT_GE(f[i].p, 0.0);
      ASSERT_LE(f[i].p, 1.0);
      for (std::size_t j = 0; j < c.size(); ++j) {
        if (c[i] > c[j]) ASSERT_GE(f[i].p, f[j].p);
      }
    }
  }
}

TEST(CwtsFractions, AgreesWithScoreClassesWithoutTies) {
  // Distinct counts and an integral slot count: fractional attribution
  // degenerates to whole papers, matching the percentile classes whose
  // boundaries fall between ranks.
  for (std::size_t n = 1; n <= 12; ++n) {
    std::vector<std::int64_t> c(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = static_cast<std::int64_t>((i + n / 2) % n) * 2 + 1;
    for (std::size_t slots = 1; slots <= n; ++slots) {
      const double x = 100.0 * static_cast<double>(slots) / static_cast<double>(n);
      const auto f = ps(cwts_fractions(c, x));
      std::vector<std::size_t> fractional;
      for (std::size_t i = 0; i < n; ++i) {
        ASSERT_TRUE(f[i] == 0.0 || f[i] == 1.0);
        if (f[i] == 1.0) fractional.push_back(i);
      }
      ASSERT_EQ(fractional.size(), slots);
      const auto hazen = percentile(c, PercentileFormula::Hazen, TieRule::Average, false);
      ASSERT_EQ(top_class_members(hazen, x, BoundaryRule::Inclusive), fractional) << "n=" << n << " slots=" << slots;
      const auto inc = percentile(c, PercentileFormula::Inclusive, TieRule::Average, false);
      ASSERT_EQ(top_class_members(inc, x, BoundaryRule::Strict), fractional) << "n=" << n << " slots=" << slots;
    }
  }
}

TEST(Oracle, ExhaustiveSmallInputs) {
  const double xs[] = {1, 5, 10, 20, 25, 100.0 / 3, 50, 75, 100};
  for (const auto& c : oracle::all_vectors(3, 6)) {
    for (double x : xs) {
      const auto got = ps(cwts_fractions(c, x));
      const auto want = oracle::cwts(c, x);
      for (std::size_t i = 0; i < c.size(); ++i) ASSERT_NEAR(got[i], want[i], 1e-12);
      for (auto a : {Approach::PLow, Approach::Hazen, Approach::InCites, Approach::P100}) {
        const auto s = score(c, {}, ApproachSpec::make(a));
        ASSERT_EQ(top_class_members(s, x, BoundaryRule::Inclusive), oracle::top_members(s, x, true));
        ASSERT_EQ(top_class_members(s, x, BoundaryRule::Strict), oracle::top_members(s, x, false));
      }
    }
  }
}

}  // namespace
}  // namespace citerank
