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

#include "nbscreen/laws.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "nbscreen/keyvalue.hpp"

namespace nbscreen {
namespace {

double log10_one_plus_inverse(double x) { return std::log1p(1.0 / x) / std::numbers::ln10; }

bool digit_in_domain(int d, int i) { return i == 1 ? (d >= 1 && d <= 9) : (d >= 0 && d <= 9); }

// Count of q in [0, b] with q % 10 == d.
std::uint64_t residue_count_upto(std::uint64_t b, std::uint64_t d) {
  return b < d ? 0 : (b - d) / 10 + 1;
}

// Integers in [1, limit] with at least i digits and i-th digit d.
std::uint64_t count_upto(std::uint64_t limit, int d, int i) {
  if (limit == 0) return 0;
  const int top = decimal_digit_count(limit);
  std::uint64_t total = 0;
  for (int nd = i; nd <= top; ++nd) {
    const std::uint64_t hi = nd == top ? limit : pow10_u64(nd) - 1;
    const std::uint64_t block = pow10_u64(nd - i);
    const std::uint64_t first_prefix = pow10_u64(i - 1);
    const std::uint64_t prefix = hi / block;
    const std::uint64_t rem = hi % block;
    // Complete blocks: i-digit prefixes q in [first_prefix, prefix - 1].
    const auto du = static_cast<std::uint64_t>(d);
    const std::uint64_t full = residue_count_upto(prefix - 1, du) -
                               residue_count_upto(first_prefix - 1, du);
    total += full * block;
    if (prefix % 10 == du) total += rem + 1;
  }
  return total;
}

}  // namespace

void RestrictionSpec::validate() const {
  if (!lower && !upper) throw std::invalid_argument("restriction needs a lower or upper bound");
  if ((lower && *lower == 0) || (upper && *upper == 0)) {
    throw std::invalid_argument("restriction bounds must be positive");
  }
  if (lower && upper && *lower > *upper) {
    throw std::invalid_argument("restriction lower bound exceeds upper bound");
  }
}

std::string RestrictionSpec::describe() const {
  if (lower && upper) return std::to_string(*lower) + "<=N<=" + std::to_string(*upper);
  if (upper) return "N<=" + std::to_string(*upper);
  if (lower) return "N>=" + std::to_string(*lower);
  return "unrestricted";
}

DigitDistribution::DigitDistribution(DigitDomain domain, std::vector<double> probs,
                                     LawFamily family, std::optional<RestrictionSpec> restriction)
    : domain_(domain), probs_(std::move(probs)), family_(family),
      restriction_(std::move(restriction)) {
  if (probs_.size() != domain_.size()) {
    throw std::invalid_argument("distribution size does not match its digit domain");
  }
  for (double p : probs_) {
    if (!(p >= 0.0)) throw std::invalid_argument("distribution has a negative probability");
  }
  const double total = std::accumulate(probs_.begin(), probs_.end(), 0.0);
  if (std::abs(total - 1.0) > 1e-12) {
    throw std::invalid_argument("distribution does not sum to 1");
  }
}

double DigitDistribution::prob_of(std::uint32_t label) const {
  for (std::size_t c = 0; c < probs_.size(); ++c) {
    if (domain_.label(c) == label) return probs_[c];
  }
  throw std::out_of_range("label " + std::to_string(label) + " is not in the digit domain");
}

std::string DigitDistribution::name() const {
  const std::string digits = std::to_string(domain_.digits());
  if (domain_.kind() == DigitDomain::Kind::kJoint) return "joint" + digits;
  switch (family_) {
    case LawFamily::kBenford: return "nb" + digits;
    case LawFamily::kUniform: return "uniform" + digits;
    case LawFamily::kRestrictedBenford:
      return "rnb" + digits + "[" + (restriction_ ? restriction_->describe() : "") + "]";
  }
  return "unknown";
}

DigitDistribution nbl_first() { return nbl_marginal(DigitIndex(1)); }

DigitDistribution nbl_second() {
  std::vector<double> probs(10, 0.0);
  for (int d = 0; d <= 9; ++d) {
    for (int j = 1; j <= 9; ++j) probs[d] += log10_one_plus_inverse(10.0 * j + d);
  }
  return DigitDistribution(DigitDomain::marginal(DigitIndex(2)), std::move(probs),
                           LawFamily::kBenford);
}

DigitDistribution nbl_marginal(DigitIndex i) {
  const auto domain = DigitDomain::marginal(i);
  std::vector<double> probs(domain.size(), 0.0);
  if (i.value() == 1) {
    for (int d = 1; d <= 9; ++d) probs[d - 1] = log10_one_plus_inverse(d);
  } else {
    if (i.value() > 8) throw std::invalid_argument("Benford marginal supported for i <= 8");
    // Sum the joint law over every (i-1)-digit prefix q: prefix q*10 + d.
    const std::uint64_t lo = pow10_u64(i.value() - 2);
    const std::uint64_t hi = pow10_u64(i.value() - 1);
    for (int d = 0; d <= 9; ++d) {
      double sum = 0.0;
      for (std::uint64_t q = lo; q < hi; ++q) {
        sum += log10_one_plus_inverse(static_cast<double>(q * 10 + static_cast<std::uint64_t>(d)));
      }
      probs[d] = sum;
    }
  }
  return DigitDistribution(domain, std::move(probs), LawFamily::kBenford);
}

DigitDistribution nbl_joint(int k) {
  if (k < 2) throw std::invalid_argument("joint law needs k >= 2; use nbl_first for k = 1");
  const auto domain = DigitDomain::joint(k);
  std::vector<double> probs(domain.size());
  for (std::size_t c = 0; c < probs.size(); ++c) {
    probs[c] = log10_one_plus_inverse(static_cast<double>(domain.label(c)));
  }
  return DigitDistribution(domain, std::move(probs), LawFamily::kBenford);
}

DigitDistribution uniform_law(DigitIndex i) {
  const auto domain = DigitDomain::marginal(i);
  return DigitDistribution(domain, std::vector<double>(domain.size(), 1.0 / domain.size()),
                           LawFamily::kUniform);
}

std::uint64_t count_with_digit(int d, DigitIndex i, const RestrictionSpec& spec) {
  spec.validate();
  if (!spec.upper) throw std::invalid_argument("cardinality requires an upper bound");
  if (!digit_in_domain(d, i.value())) {
    throw std::invalid_argument("digit " + std::to_string(d) + " is outside the domain of D" +
                                std::to_string(i.value()));
  }
  if (i.value() > 19) return 0;
  const std::uint64_t lower = spec.lower.value_or(1);
  return count_upto(*spec.upper, d, i.value()) - count_upto(lower - 1, d, i.value());
}

DigitDistribution restricted_law(const DigitDistribution& base, const RestrictionSpec& spec) {
  if (base.domain().kind() != DigitDomain::Kind::kMarginal ||
      base.family() != LawFamily::kBenford) {
    throw std::invalid_argument("restricted laws are defined for Benford digit marginals only");
  }
  spec.validate();
  if (!spec.upper) throw std::invalid_argument("cardinality requires an upper bound");

  const DigitIndex i(base.domain().digits());
  const auto base_probs = base.probs();
  std::vector<std::uint64_t> cardinality(base_probs.size());
  for (std::size_t c = 0; c < cardinality.size(); ++c) {
    cardinality[c] = count_with_digit(static_cast<int>(base.domain().label(c)), i, spec);
  }
  if (std::all_of(cardinality.begin(), cardinality.end(), [](auto n) { return n == 0; })) {
    throw std::invalid_argument("empty restriction");
  }
  std::vector<double> weights(base_probs.begin(), base_probs.end());
  // Equal cardinalities cancel in the renormalization; keep the base law as is.
  if (std::adjacent_find(cardinality.begin(), cardinality.end(), std::not_equal_to<>()) ==
      cardinality.end()) {
    return DigitDistribution(base.domain(), std::move(weights), LawFamily::kRestrictedBenford, spec);
  }
  double total = 0.0;
  for (std::size_t c = 0; c < weights.size(); ++c) {
    weights[c] *= static_cast<double>(cardinality[c]);
    total += weights[c];
  }
  for (double& w : weights) w /= total;
  return DigitDistribution(base.domain(), std::move(weights), LawFamily::kRestrictedBenford, spec);
}

RestrictionSpec parse_restriction(std::string_view text) {
  RestrictionSpec spec;
  const auto dash = text.find('-');
  if (dash == std::string_view::npos) {
    spec.upper = parse_u64(text, "restriction bound");
  } else {
    spec.lower = parse_u64(text.substr(0, dash), "restriction lower bound");
    spec.upper = parse_u64(text.substr(dash + 1), "restriction upper bound");
  }
  spec.validate();
  return spec;
}

DigitDistribution law_from_code(std::string_view code, const std::optional<RestrictionSpec>& bound) {
  const std::string_view original = code;
  std::optional<RestrictionSpec> spec = bound;
  if (const auto colon = code.find(':'); colon != std::string_view::npos) {
    spec = parse_restriction(code.substr(colon + 1));
    code = code.substr(0, colon);
  }
  auto digits_after = [&](std::string_view prefix) -> std::optional<int> {
    if (!code.starts_with(prefix) || code.size() == prefix.size()) return std::nullopt;
    return static_cast<int>(parse_u64(code.substr(prefix.size()), "law code"));
  };
  const auto bad = [&] {
    return std::invalid_argument("unknown law '" + std::string(original) +
                                 "' (expected nb1, nb2, joint2, rnb1, rnb2, uniform1, ...)");
  };

  try {
    if (auto k = digits_after("joint")) return nbl_joint(*k);
    if (auto i = digits_after("uniform")) return uniform_law(DigitIndex(*i));
    std::optional<int> restricted = digits_after("rnb");
    if (!restricted) restricted = digits_after("cnb");
    if (restricted) {
      if (!spec) {
        throw std::invalid_argument("law '" + std::string(original) + "' needs a bound");
      }
      return restricted_law(nbl_marginal(DigitIndex(*restricted)), *spec);
    }
    if (auto i = digits_after("nb")) return nbl_marginal(DigitIndex(*i));
  } catch (const std::invalid_argument& e) {
    if (std::string_view(e.what()).find("law code") != std::string_view::npos) throw bad();
    throw;
  }
  throw bad();
}

}  // namespace nbscreen
