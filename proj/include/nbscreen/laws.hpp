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

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nbscreen/digits.hpp"

namespace nbscreen {

/// Admissible count range for a restricted law: lower <= N <= upper.
struct RestrictionSpec {
  std::optional<std::uint64_t> lower;
  std::optional<std::uint64_t> upper;

  static RestrictionSpec at_most(std::uint64_t bound) { return {std::nullopt, bound}; }
  static RestrictionSpec between(std::uint64_t lo, std::uint64_t hi) { return {lo, hi}; }

  /// Throws std::invalid_argument unless at least one bound is present,
  /// bounds are positive, and lower <= upper.
  void validate() const;
  /// "N<=800", "N>=10", "10<=N<=800".
  std::string describe() const;
  bool operator==(const RestrictionSpec&) const = default;
};

enum class LawFamily { kBenford, kUniform, kRestrictedBenford };

/// A reference probability vector over a DigitDomain.
class DigitDistribution {
 public:
  DigitDistribution(DigitDomain domain, std::vector<double> probs, LawFamily family,
                    std::optional<RestrictionSpec> restriction = std::nullopt);

  const DigitDomain& domain() const noexcept { return domain_; }
  std::span<const double> probs() const noexcept { return probs_; }
  LawFamily family() const noexcept { return family_; }
  const std::optional<RestrictionSpec>& restriction() const noexcept { return restriction_; }
  double prob_of(std::uint32_t label) const;

  /// Short code used in reports: nb1, nb2, nb3, joint2, rnb2[N<=2250], uniform1.
  std::string name() const;

 private:
  DigitDomain domain_;
  std::vector<double> probs_;
  LawFamily family_;
  std::optional<RestrictionSpec> restriction_;
};

/// log10(1 + 1/d), d = 1..9.
DigitDistribution nbl_first();

/// sum_{j=1..9} log10(1 + 1/(10j + d)), d = 0..9.
DigitDistribution nbl_second();

/// Benford marginal law of the i-th significant digit, for any i >= 1.
DigitDistribution nbl_marginal(DigitIndex i);

/// Joint law of the leading k digits, 2 <= k <= 6.
DigitDistribution nbl_joint(int k);

/// Uniform law over the i-th digit domain (1/9 for i = 1, 1/10 otherwise).
DigitDistribution uniform_law(DigitIndex i);

/// Number of integers N with spec.lower (default 1) <= N <= spec.upper whose
/// i-th significant digit is d. Integers with fewer than i digits are not
/// counted. O(log upper).
std::uint64_t count_with_digit(int d, DigitIndex i, const RestrictionSpec& spec);

/// Benford marginal law renormalized under a count restriction:
/// p(d) proportional to p_B(d) * #{admissible N with digit d}.
DigitDistribution restricted_law(const DigitDistribution& base, const RestrictionSpec& spec);

/// Law from a short code: nb1, nb2 (any nbI), joint2..joint6, uniform1,
/// uniform2, and restricted rnbI / cnbI. A restricted code takes its bound
/// from a suffix (rnb2:2250, rnb2:10-2250) or else from `bound`.
DigitDistribution law_from_code(std::string_view code,
                                const std::optional<RestrictionSpec>& bound = std::nullopt);

/// Parse "K" or "L-K" into a restriction.
RestrictionSpec parse_restriction(std::string_view text);

}  // namespace nbscreen
