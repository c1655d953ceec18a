// Copyright 2026 The nbscreen Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nbscreen/digits.hpp"
#include "nbscreen/laws.hpp"

namespace nbscreen {

/// Prior probability of the null (conformance) hypothesis.
struct HypothesisPrior {
  double prior_h0 = 0.5;

  void validate() const;
  double prior_odds() const { return prior_h0 / (1.0 - prior_h0); }
};

struct ChiSquare {
  double statistic = 0.0;
  int df = 0;
};

/// Robust-Bayes lower bound on P(H0 | p-value). Above p = 1/e the bound is
/// not informative; `above_half` is set and `value` holds 0.5.
struct LowerBound {
  double value = 0.0;
  bool above_half = false;
};

/// One screening of one column against one law.
struct TestReport {
  TestReport(std::string column_name, DigitDistribution reference, CountVector observed)
      : column(std::move(column_name)), law(std::move(reference)), counts(std::move(observed)) {}

  std::string column;
  DigitDistribution law;
  CountVector counts;
  std::size_t m = 0;             // units analyzed for this test
  std::uint64_t median = 0;      // median of the analyzed values (lower middle if even)
  ChiSquare chi2;
  double p_value = 1.0;
  LowerBound lower_bound;
  double log_b01 = 0.0;          // natural log of the Bayes factor B01
  double posterior_h0 = 0.5;
  std::vector<std::string> warnings;
};

/// Pearson statistic n * sum_d (p_d - f_d)^2 / p_d with df = cells - 1.
/// Cells where the reference probability is zero are dropped from both the
/// sum and df; an observation in such a cell makes the statistic +inf.
ChiSquare chi_squared_stat(const CountVector& obs, const DigitDistribution& ref);

/// Same statistic over raw cell counts and probabilities of equal length.
ChiSquare chi_squared_stat(std::span<const std::uint64_t> counts, std::span<const double> probs);

/// Pr(chi2_df >= chi2).
double chi_squared_pvalue(double chi2, int df);

/// 1 / (1 + [-e p ln p]^-1) for p < 1/e.
LowerBound universal_lower_bound(double p);

/// ln B01 for a simple null (the reference law) against a uniform prior on the
/// probability simplex:
///   sum n_i ln p_i - ln Gamma(k) - sum ln Gamma(n_i + 1) + ln Gamma(n + k).
/// Returns -inf when a cell with p_i = 0 was observed.
double log_bayes_factor_uniform(const CountVector& obs, const DigitDistribution& ref);

/// Same, over raw cell counts and probabilities of equal length k >= 1.
double log_bayes_factor_uniform(std::span<const std::uint64_t> counts,
                                std::span<const double> probs);

/// Posterior P(H0 | data) = rho B01 / (rho B01 + 1) with prior odds rho,
/// evaluated from ln B01 without overflow.
double posterior_h0(double log_b01, const HypothesisPrior& prior = {});

/// Tabulate the column over the law's domain and run every statistic.
TestReport screen(const DatasetColumn& column, const DigitDistribution& law,
                  const HypothesisPrior& prior = {},
                  ExclusionPolicy policy = ExclusionPolicy::kExcludeShort);

}  // namespace nbscreen
