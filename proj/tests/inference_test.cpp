// Copyright 2026 The nbscreen Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "nbscreen/inference.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <vector>

#include "nbscreen/laws.hpp"
#include "test_support.hpp"

namespace nbscreen {
namespace {

std::uint64_t factorial(std::uint64_t n) {
  std::uint64_t f = 1;
  for (std::uint64_t j = 2; j <= n; ++j) f *= j;
  return f;
}

// B01 = prod p_i^{n_i} * (n+k-1)! / ((k-1)! prod n_i!), with exact integer factorials.
long double exact_bayes_factor(const std::vector<std::uint64_t>& counts,
                               const std::vector<double>& probs) {
  const std::uint64_t k = counts.size();
  const std::uint64_t n = std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
  long double likelihood = 1.0L;
  std::uint64_t denominator = factorial(k - 1);
  for (std::size_t c = 0; c < k; ++c) {
    likelihood *= std::pow(static_cast<long double>(probs[c]), static_cast<long double>(counts[c]));
    denominator *= factorial(counts[c]);
  }
  return likelihood * static_cast<long double>(factorial(n + k - 1)) /
         static_cast<long double>(denominator);
}

DatasetColumn column_from_prefixes(const std::vector<std::uint64_t>& cell_counts,
                                   const DigitDomain& joint2, std::uint64_t seed) {
  testing::ValueGen gen(seed);
  DatasetColumn column{"synthetic", {}, 0};
  for (std::size_t c = 0; c < cell_counts.size(); ++c) {
    for (std::uint64_t t = 0; t < cell_counts[c]; ++t) {
      column.values.push_back(joint2.label(c) * 100 + gen.between(0, 99));
    }
  }
  return column;
}

TEST(ChiSquared, SingleObservation) {
  const auto law = nbl_first();
  std::vector<std::uint64_t> counts(9, 0);
  counts[0] = 1;
  const auto chi2 = chi_squared_stat(CountVector(law.domain(), counts), law);
  EXPECT_NEAR(chi2.statistic, 1.0 / std::log10(2.0) - 1.0, 1e-12);
  EXPECT_EQ(chi2.df, 8);
}

TEST(ChiSquared, PerfectFitIsZero) {
  const auto law = uniform_law(DigitIndex(2));
  const auto chi2 = chi_squared_stat(CountVector(law.domain(), std::vector<std::uint64_t>(10, 7)),
                                     law);
  EXPECT_EQ(chi2.statistic, 0.0);
  EXPECT_EQ(chi2.df, 9);
  EXPECT_EQ(chi_squared_pvalue(chi2.statistic, chi2.df), 1.0);
}

TEST(ChiSquared, ScalesWithSampleSize) {
  testing::ValueGen gen(11);
  const auto law = nbl_second();
  for (int t = 0; t < 200; ++t) {
    std::vector<std::uint64_t> counts(10);
    for (auto& c : counts) c = gen.between(0, 1000);
    counts[3] += 1;
    std::vector<std::uint64_t> doubled(counts);
    for (auto& c : doubled) c *= 2;
    const double base = chi_squared_stat(counts, law.probs()).statistic;
    EXPECT_DOUBLE_EQ(chi_squared_stat(doubled, law.probs()).statistic, 2.0 * base);
  }
}

TEST(ChiSquared, DegreesOfFreedomAndErrors) {
  EXPECT_EQ(chi_squared_stat(std::vector<std::uint64_t>(90, 1), nbl_joint(2).probs()).df, 89);
  const auto law = nbl_first();
  EXPECT_THROW(chi_squared_stat(CountVector(law.domain(), std::vector<std::uint64_t>(9, 0)), law),
               std::domain_error);
  EXPECT_THROW(chi_squared_stat(CountVector(nbl_second().domain(),
                                            std::vector<std::uint64_t>(10, 1)),
                                law),
               std::invalid_argument);
  // A zero-probability cell is dropped unless something was observed there.
  const std::vector<double> probs = {0.5, 0.5, 0.0};
  EXPECT_EQ(chi_squared_stat(std::vector<std::uint64_t>{3, 3, 0}, probs).df, 1);
  EXPECT_EQ(chi_squared_stat(std::vector<std::uint64_t>{3, 3, 0}, probs).statistic, 0.0);
  EXPECT_EQ(chi_squared_stat(std::vector<std::uint64_t>{3, 3, 1}, probs).statistic,
            std::numeric_limits<double>::infinity());
}

TEST(PValue, Landmarks) {
  EXPECT_EQ(chi_squared_pvalue(0.0, 9), 1.0);
  EXPECT_NEAR(chi_squared_pvalue(16.919, 9), 0.05, 5e-4);
  EXPECT_EQ(chi_squared_pvalue(std::numeric_limits<double>::infinity(), 9), 0.0);
}

TEST(LowerBound, CalibrationTable) {
  EXPECT_NEAR(universal_lower_bound(0.05).value, 0.29, 0.005);
  EXPECT_NEAR(universal_lower_bound(0.01).value, 0.11, 0.005);
  EXPECT_NEAR(universal_lower_bound(0.001).value, 0.0184, 0.0005);
  const auto boundary = universal_lower_bound(1.0 / std::numbers::e);
  EXPECT_NEAR(boundary.value, 0.5, 1e-12);
  EXPECT_TRUE(boundary.above_half);
  EXPECT_FALSE(universal_lower_bound(0.3).above_half);
  EXPECT_TRUE(universal_lower_bound(0.9).above_half);
  EXPECT_THROW(universal_lower_bound(0.0), std::domain_error);
  EXPECT_THROW(universal_lower_bound(1.5), std::domain_error);
}

TEST(LowerBound, IncreasingAndAboveP) {
  double previous = 0.0;
  for (double p = 1e-12; p < 1.0 / std::numbers::e; p *= 1.05) {
    const double v = universal_lower_bound(p).value;
    ASSERT_GT(v, previous);
    ASSERT_GE(v, p);
    ASSERT_LE(v, 0.5 + 1e-12);
    previous = v;
  }
}

TEST(BayesFactor, EmptyDataIsNeutral) {
  const auto law = nbl_second();
  EXPECT_EQ(log_bayes_factor_uniform(CountVector(law.domain(), std::vector<std::uint64_t>(10, 0)),
                                     law),
            0.0);
  EXPECT_EQ(log_bayes_factor_uniform(std::vector<std::uint64_t>(3, 0),
                                     std::vector<double>{0.5, 0.3, 0.2}),
            0.0);
}

TEST(BayesFactor, SmallExample) {
  const double got = log_bayes_factor_uniform(std::vector<std::uint64_t>{2, 1, 0},
                                              std::vector<double>{0.5, 0.3, 0.2});
  EXPECT_NEAR(got, std::log(2.25), 1e-13);
}

TEST(BayesFactor, ExactFactorialOracle) {
  testing::ValueGen gen(12);
  for (int t = 0; t < 2000; ++t) {
    const std::size_t k = gen.between(1, 4);
    const std::uint64_t n = gen.between(0, 12);
    std::vector<double> probs(k);
    double total = 0.0;
    for (auto& p : probs) total += (p = 0.05 + gen.unit());
    for (auto& p : probs) p /= total;
    std::vector<std::uint64_t> counts(k, 0);
    for (std::uint64_t j = 0; j < n; ++j) ++counts[gen.between(0, k - 1)];
    const double got = log_bayes_factor_uniform(counts, probs);
    const long double expected = std::log(exact_bayes_factor(counts, probs));
    ASSERT_LT(std::abs(std::expm1(static_cast<long double>(got) - expected)), 1e-12L)
        << "k=" << k << " n=" << n;
  }
}

TEST(BayesFactor, ZeroProbabilityCellObserved) {
  EXPECT_EQ(log_bayes_factor_uniform(std::vector<std::uint64_t>{1, 1},
                                     std::vector<double>{1.0, 0.0}),
            -std::numeric_limits<double>::infinity());
  EXPECT_EQ(posterior_h0(-std::numeric_limits<double>::infinity()), 0.0);
}

// Relabeling the cells, applied to counts and probabilities together, changes nothing.
TEST(BayesFactor, Exchangeable) {
  testing::ValueGen gen(13);
  const auto law = nbl_second();
  for (int t = 0; t < 100; ++t) {
    std::vector<std::uint64_t> counts(10);
    for (auto& c : counts) c = gen.between(0, 500);
    std::vector<std::size_t> order(10);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), gen.engine());
    std::vector<std::uint64_t> pc(10);
    std::vector<double> pp(10);
    for (std::size_t c = 0; c < 10; ++c) {
      pc[c] = counts[order[c]];
      pp[c] = law.probs()[order[c]];
    }
    const double a = log_bayes_factor_uniform(counts, law.probs());
    const double b = log_bayes_factor_uniform(pc, pp);
    ASSERT_NEAR(a, b, 1e-9 * std::max(1.0, std::abs(a)));
    ASSERT_NEAR(chi_squared_stat(counts, law.probs()).statistic,
                chi_squared_stat(pc, pp).statistic, 1e-9);
  }
}

TEST(BayesFactor, LargeConformingSampleFavorsNull) {
  const auto law = nbl_second();
  const auto counts = testing::multinomial(law.probs(), 100000, 14);
  EXPECT_GT(log_bayes_factor_uniform(CountVector(law.domain(), counts), law), 0.0);
}

TEST(Posterior, Examples) {
  EXPECT_EQ(posterior_h0(0.0), 0.5);
  EXPECT_NEAR(posterior_h0(std::log(3.0)), 0.75, 1e-15);
  EXPECT_EQ(posterior_h0(-1e4), 0.0);
  EXPECT_EQ(posterior_h0(1e4), 1.0);
  EXPECT_NEAR(posterior_h0(0.0, HypothesisPrior{0.2}), 0.2, 1e-15);
  EXPECT_THROW(posterior_h0(0.0, HypothesisPrior{0.0}), std::invalid_argument);
  EXPECT_THROW(posterior_h0(0.0, HypothesisPrior{1.0}), std::invalid_argument);
}

TEST(Posterior, MonotoneInEvidenceAndPrior) {
  double previous = 0.0;
  for (double lb = -50.0; lb <= 50.0; lb += 0.25) {
    const double v = posterior_h0(lb);
    ASSERT_GE(v, previous);
    previous = v;
  }
  previous = 0.0;
  for (double prior = 0.01; prior < 1.0; prior += 0.01) {
    const double v = posterior_h0(1.3, HypothesisPrior{prior});
    ASSERT_GT(v, previous);
    previous = v;
  }
}

TEST(Screen, ConformingSecondDigitsPass) {
  const auto joint = nbl_joint(2);
  const auto cells = testing::multinomial(joint.probs(), 19064, 15);
  const auto column = column_from_prefixes(cells, joint.domain(), 16);
  const auto report = screen(column, nbl_second());
  EXPECT_EQ(report.m, 19064u);
  EXPECT_EQ(report.counts.n(), 19064u);
  EXPECT_GT(report.posterior_h0, 0.99);
  EXPECT_GT(report.p_value, 0.01);
  EXPECT_TRUE(report.warnings.empty());
}

TEST(Screen, UniformSecondDigitsFail) {
  const std::vector<double> flat(90, 1.0 / 90.0);
  const auto cells = testing::multinomial(flat, 19064, 17);
  const auto column = column_from_prefixes(cells, DigitDomain::joint(2), 18);
  const auto report = screen(column, nbl_second());
  EXPECT_LT(report.posterior_h0, 1e-6);
  EXPECT_LT(report.p_value, 1e-6);
  EXPECT_FALSE(report.lower_bound.above_half);
}

TEST(Screen, ShortValuesExcludedAndMedian) {
  const DatasetColumn column{"c", {5, 120, 34, 7, 981, 46}, 0};
  const auto first = screen(column, nbl_first());
  EXPECT_EQ(first.m, 6u);
  EXPECT_EQ(first.median, 34u);
  const auto second = screen(column, nbl_second());
  EXPECT_EQ(second.m, 4u);
  EXPECT_EQ(second.median, 46u);
  EXPECT_EQ(second.counts.excluded(), 2u);
  EXPECT_FALSE(second.warnings.empty());
  const auto padded = screen(column, nbl_second(), {}, ExclusionPolicy::kTrailingZero);
  EXPECT_EQ(padded.m, 6u);
}

TEST(Screen, NothingToAnalyze) {
  EXPECT_THROW(screen(DatasetColumn{"c", {}, 3}, nbl_first()), NoAnalyzableValues);
  EXPECT_THROW(screen(DatasetColumn{"c", {1, 2, 3}, 0}, nbl_second()), NoAnalyzableValues);
}

}  // namespace
}  // namespace nbscreen
