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

#include "nbscreen/inference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "nbscreen/kernels.hpp"
#include "nbscreen/special.hpp"

namespace nbscreen {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMinExpected = 5.0;

void check_domains(const CountVector& obs, const DigitDistribution& ref) {
  if (!(obs.domain() == ref.domain())) {
    throw std::invalid_argument("observed counts and reference law use different digit domains");
  }
}

bool observed_where_impossible(std::span<const std::uint64_t> counts,
                               std::span<const double> probs) {
  for (std::size_t c = 0; c < counts.size(); ++c) {
    if (probs[c] == 0.0 && counts[c] > 0) return true;
  }
  return false;
}

std::uint64_t lower_median(std::vector<std::uint64_t> values) {
  if (values.empty()) return 0;
  const auto mid = values.begin() + static_cast<std::ptrdiff_t>((values.size() - 1) / 2);
  std::nth_element(values.begin(), mid, values.end());
  return *mid;
}

}  // namespace

void HypothesisPrior::validate() const {
  if (!(prior_h0 > 0.0 && prior_h0 < 1.0)) {
    throw std::invalid_argument("prior probability of H0 must lie strictly between 0 and 1");
  }
}

ChiSquare chi_squared_stat(std::span<const std::uint64_t> counts, std::span<const double> probs) {
  if (counts.size() != probs.size()) {
    throw std::invalid_argument("counts and probabilities differ in length");
  }
  const std::uint64_t n = std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
  if (n == 0) throw std::domain_error("chi-squared statistic needs n > 0");

  const auto support = std::count_if(probs.begin(), probs.end(), [](double p) { return p > 0.0; });
  ChiSquare out;
  out.df = static_cast<int>(support) - 1;
  if (out.df < 1) throw std::invalid_argument("reference law has fewer than two cells");
  if (observed_where_impossible(counts, probs)) {
    out.statistic = kInf;
    return out;
  }
  std::vector<double> props(counts.size());
  for (std::size_t c = 0; c < counts.size(); ++c) {
    props[c] = static_cast<double>(counts[c]) / static_cast<double>(n);
  }
  out.statistic = static_cast<double>(n) * kernels::active().chi_square_cells(probs, props);
  return out;
}

ChiSquare chi_squared_stat(const CountVector& obs, const DigitDistribution& ref) {
  check_domains(obs, ref);
  return chi_squared_stat(obs.counts(), ref.probs());
}

double chi_squared_pvalue(double chi2, int df) { return special::chi_squared_upper_tail(chi2, df); }

LowerBound universal_lower_bound(double p) {
  if (!(p > 0.0 && p <= 1.0)) throw std::domain_error("p-value must lie in (0, 1]");
  constexpr double kInvE = 1.0 / std::numbers::e;
  const double q = std::min(p, kInvE);
  const double evidence = -std::numbers::e * q * std::log(q);
  return {1.0 / (1.0 + 1.0 / evidence), p >= kInvE};
}

double log_bayes_factor_uniform(std::span<const std::uint64_t> counts,
                                std::span<const double> probs) {
  if (counts.size() != probs.size() || counts.empty()) {
    throw std::invalid_argument("counts and probabilities must be non-empty and equal in length");
  }
  if (observed_where_impossible(counts, probs)) return -kInf;

  std::vector<double> weights(counts.size());
  std::vector<double> log_probs(counts.size());
  double log_multinomial = 0.0;
  double n = 0.0;
  for (std::size_t c = 0; c < counts.size(); ++c) {
    weights[c] = static_cast<double>(counts[c]);
    log_probs[c] = std::log(probs[c]);
    log_multinomial += special::log_gamma(weights[c] + 1.0);
    n += weights[c];
  }
  const double k = static_cast<double>(counts.size());
  const double log_likelihood = kernels::active().weighted_log_sum(weights, log_probs);
  return log_likelihood - special::log_gamma(k) - log_multinomial + special::log_gamma(n + k);
}

double log_bayes_factor_uniform(const CountVector& obs, const DigitDistribution& ref) {
  check_domains(obs, ref);
  return log_bayes_factor_uniform(obs.counts(), ref.probs());
}

double posterior_h0(double log_b01, const HypothesisPrior& prior) {
  prior.validate();
  if (std::isnan(log_b01)) throw std::domain_error("log Bayes factor is NaN");
  const double log_odds = std::log(prior.prior_odds()) + log_b01;
  // Logistic function, split by sign so exp never overflows.
  if (log_odds >= 0.0) return 1.0 / (1.0 + std::exp(-log_odds));
  const double e = std::exp(log_odds);
  return e / (1.0 + e);
}

TestReport screen(const DatasetColumn& column, const DigitDistribution& law,
                  const HypothesisPrior& prior, ExclusionPolicy policy) {
  prior.validate();
  if (column.values.empty()) throw NoAnalyzableValues();

  CountVector counts = tabulate(column.values, law.domain(), policy);
  const int need = law.domain().required_length();
  std::vector<std::uint64_t> analyzed;
  analyzed.reserve(counts.n());
  for (const std::uint64_t v : column.values) {
    if (v == 0) continue;
    if (policy == ExclusionPolicy::kTrailingZero || decimal_digit_count(v) >= need) {
      analyzed.push_back(v);
    }
  }

  TestReport report(column.name, law, std::move(counts));
  report.m = analyzed.size();
  report.median = lower_median(std::move(analyzed));
  report.chi2 = chi_squared_stat(report.counts, law);
  report.p_value = chi_squared_pvalue(report.chi2.statistic, report.chi2.df);
  report.lower_bound = report.p_value > 0.0 ? universal_lower_bound(report.p_value)
                                            : LowerBound{0.0, false};
  report.log_b01 = log_bayes_factor_uniform(report.counts, law);
  report.posterior_h0 = posterior_h0(report.log_b01, prior);

  const double n = static_cast<double>(report.counts.n());
  const auto probs = law.probs();
  const auto sparse = std::count_if(probs.begin(), probs.end(), [n](double p) {
    return p > 0.0 && n * p < kMinExpected;
  });
  if (sparse > 0) {
    report.warnings.push_back(std::to_string(sparse) + " of " + std::to_string(probs.size()) +
                              " cells have expected count below 5; chi-squared p-value is"
                              " approximate");
  }
  return report;
}

}  // namespace nbscreen
