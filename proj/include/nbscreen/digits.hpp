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

#include <compare>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace nbscreen {

/// 1-based position of a significant digit (1 = leading digit).
class DigitIndex {
 public:
  explicit DigitIndex(int i) : i_(i) {
    if (i < 1) throw std::invalid_argument("digit index must be >= 1");
  }
  int value() const noexcept { return i_; }
  auto operator<=>(const DigitIndex&) const = default;

 private:
  int i_;
};

/// How integers with fewer digits than a test needs are handled.
///
/// kExcludeShort drops them from the tally (default). kTrailingZero reads
/// them as real numbers, so D2(9) = 0.
enum class ExclusionPolicy { kExcludeShort, kTrailingZero };

std::string_view to_string(ExclusionPolicy policy);
ExclusionPolicy parse_exclusion_policy(std::string_view text);

/// Thrown when a tabulation has nothing left to count.
class NoAnalyzableValues : public std::runtime_error {
 public:
  NoAnalyzableValues() : std::runtime_error("no analyzable values") {}
};

/// A named column of positive per-unit counts.
struct DatasetColumn {
  std::string name;
  std::vector<std::uint64_t> values;  // retained values, all >= 1
  std::size_t excluded_count = 0;     // rows dropped at ingestion

  std::size_t m() const noexcept { return values.size(); }
  std::size_t row_count() const noexcept { return values.size() + excluded_count; }
};

/// The cells a digit statistic ranges over: either the i-th significant digit
/// (1..9 for i = 1, 0..9 otherwise) or the ordered k-digit leading prefix
/// (10..99 for k = 2, encoded as the prefix integer).
class DigitDomain {
 public:
  enum class Kind { kMarginal, kJoint };

  static DigitDomain marginal(DigitIndex i) { return DigitDomain(Kind::kMarginal, i.value()); }
  static DigitDomain joint(int k);

  Kind kind() const noexcept { return kind_; }
  /// Digit position for marginal domains, prefix length for joint ones.
  int digits() const noexcept { return digits_; }
  /// Number of leading digits a value needs to land in this domain.
  int required_length() const noexcept { return digits_; }

  std::size_t size() const noexcept;
  /// Integer label of cell `c`: the digit, or the prefix value.
  std::uint32_t label(std::size_t c) const noexcept;
  std::vector<std::uint32_t> labels() const;
  /// Cell index of a leading prefix of length required_length().
  std::size_t cell_of_prefix(std::uint64_t prefix) const noexcept;
  std::string label_text(std::size_t c) const { return std::to_string(label(c)); }

  bool operator==(const DigitDomain&) const = default;

 private:
  DigitDomain(Kind kind, int digits) : kind_(kind), digits_(digits) {}
  Kind kind_;
  int digits_;
};

/// Observed digit-frequency counts over a DigitDomain.
class CountVector {
 public:
  CountVector(DigitDomain domain, std::vector<std::uint64_t> counts, std::size_t excluded = 0);

  const DigitDomain& domain() const noexcept { return domain_; }
  std::span<const std::uint64_t> counts() const noexcept { return counts_; }
  std::uint64_t n() const noexcept { return n_; }
  /// Values dropped by the exclusion policy during tabulation.
  std::size_t excluded() const noexcept { return excluded_; }
  std::uint64_t count_of(std::uint32_t label) const;
  /// f_d = n_d / n. Requires n > 0.
  std::vector<double> proportions() const;

 private:
  DigitDomain domain_;
  std::vector<std::uint64_t> counts_;
  std::uint64_t n_ = 0;
  std::size_t excluded_ = 0;
};

/// Number of decimal digits of x (x >= 1).
int decimal_digit_count(std::uint64_t x) noexcept;

/// 10^e for 0 <= e <= 19.
std::uint64_t pow10_u64(int e) noexcept;

/// Leading `len` significant digits of x as an integer, or nullopt when x has
/// fewer than `len` digits and the policy excludes short values.
std::optional<std::uint64_t> leading_prefix(std::uint64_t x, int len, ExclusionPolicy policy);

namespace detail {
int integer_significant_digit(std::uint64_t x, int i);
}  // namespace detail

/// i-th significant digit of a positive finite real, read from its shortest
/// round-trip decimal representation. Digits past the written ones are 0.
int significant_digit(double x, DigitIndex i);

/// i-th significant digit of a positive integer, by integer arithmetic.
int significant_digit(std::integral auto x, DigitIndex i) {
  if (x <= 0) throw std::domain_error("significant digit requires x > 0");
  return detail::integer_significant_digit(static_cast<std::uint64_t>(x), i.value());
}

/// Tally the i-th significant digit over a column's retained values.
CountVector digit_frequencies(const DatasetColumn& column, DigitIndex i,
                              ExclusionPolicy policy = ExclusionPolicy::kExcludeShort);

/// Tally ordered k-digit leading prefixes (k >= 2).
CountVector joint_frequencies(const DatasetColumn& column, int k = 2,
                              ExclusionPolicy policy = ExclusionPolicy::kExcludeShort);

/// Tally real values (e.g. simulated draws) over a domain using their decimal
/// significant digits; digits past the written ones count as 0.
CountVector tabulate_reals(std::span<const double> values, const DigitDomain& domain);

/// Tally over an arbitrary domain; the shared path behind the two above.
CountVector tabulate(std::span<const std::uint64_t> values, const DigitDomain& domain,
                     ExclusionPolicy policy);

}  // namespace nbscreen
