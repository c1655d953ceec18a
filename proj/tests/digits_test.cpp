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

#include "nbscreen/digits.hpp"

#include <gtest/gtest.h>

#include <charconv>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "test_support.hpp"

namespace nbscreen {
namespace {

using testing::ValueGen;
using testing::string_prefix;

TEST(SignificantDigit, Examples) {
  EXPECT_EQ(significant_digit(0.154, DigitIndex(2)), 5);
  EXPECT_EQ(significant_digit(0.154, DigitIndex(1)), 1);
  EXPECT_EQ(significant_digit(7, DigitIndex(1)), 7);
  EXPECT_EQ(significant_digit(998.5, DigitIndex(2)), 9);
  EXPECT_EQ(significant_digit(0.00987, DigitIndex(1)), 9);
  EXPECT_EQ(significant_digit(154, DigitIndex(3)), 4);
}

TEST(SignificantDigit, PastTheLastDigitIsZero) {
  EXPECT_EQ(significant_digit(9, DigitIndex(2)), 0);
  EXPECT_EQ(significant_digit(9.0, DigitIndex(2)), 0);
  EXPECT_EQ(significant_digit(std::uint64_t{100}, DigitIndex(3)), 0);
}

TEST(SignificantDigit, RejectsNonPositiveAndNonFinite) {
  EXPECT_THROW(significant_digit(0, DigitIndex(1)), std::domain_error);
  EXPECT_THROW(significant_digit(-3, DigitIndex(1)), std::domain_error);
  EXPECT_THROW(significant_digit(0.0, DigitIndex(1)), std::domain_error);
  EXPECT_THROW(significant_digit(-0.5, DigitIndex(1)), std::domain_error);
  EXPECT_THROW(significant_digit(std::numeric_limits<double>::infinity(), DigitIndex(1)),
               std::domain_error);
  EXPECT_THROW(significant_digit(std::numeric_limits<double>::quiet_NaN(), DigitIndex(1)),
               std::domain_error);
  EXPECT_THROW(DigitIndex(0), std::invalid_argument);
}

// Integers: digit i is the i-th character of the decimal string.
TEST(SignificantDigit, IntegersMatchDecimalString) {
  ValueGen gen(101);
  for (int t = 0; t < 20000; ++t) {
    const std::uint64_t x = gen.any();
    const std::string s = std::to_string(x);
    for (int i = 1; i <= 21; ++i) {
      const int expected = i <= static_cast<int>(s.size()) ? s[i - 1] - '0' : 0;
      ASSERT_EQ(significant_digit(x, DigitIndex(i)), expected) << x << " i=" << i;
    }
  }
}

// Reals: build x from a decimal mantissa and exponent, then read the digits back.
TEST(SignificantDigit, RealsMatchDecimalMantissa) {
  ValueGen gen(202);
  for (int t = 0; t < 20000; ++t) {
    const int len = static_cast<int>(gen.between(1, 15));
    std::string mantissa(1, static_cast<char>('1' + gen.between(0, 8)));
    for (int k = 1; k < len; ++k) mantissa.push_back(static_cast<char>('0' + gen.between(0, 9)));
    const int exponent = static_cast<int>(gen.between(0, 80)) - 40;
    const std::string text = mantissa + "e" + std::to_string(exponent);
    double x = 0.0;
    std::from_chars(text.data(), text.data() + text.size(), x);
    for (int i = 1; i <= 17; ++i) {
      const int expected = i <= len ? mantissa[i - 1] - '0' : 0;
      ASSERT_EQ(significant_digit(x, DigitIndex(i)), expected) << text << " i=" << i;
    }
  }
}

TEST(SignificantDigit, IntegerDecimalShiftInvariance) {
  ValueGen gen(303);
  for (int t = 0; t < 5000; ++t) {
    const std::uint64_t x = gen.between(1, 999999999);
    const int i = static_cast<int>(gen.between(1, 9));
    std::uint64_t shifted = x;
    for (int j = 0; j < 9; ++j) {
      ASSERT_EQ(significant_digit(shifted, DigitIndex(i)), significant_digit(x, DigitIndex(i)));
      shifted *= 10;
    }
  }
}

TEST(LeadingPrefix, PoliciesOnShortValues) {
  EXPECT_EQ(leading_prefix(154, 2, ExclusionPolicy::kExcludeShort), 15u);
  EXPECT_EQ(leading_prefix(9, 2, ExclusionPolicy::kExcludeShort), std::nullopt);
  EXPECT_EQ(leading_prefix(9, 2, ExclusionPolicy::kTrailingZero), 90u);
  EXPECT_EQ(leading_prefix(UINT64_MAX, 3, ExclusionPolicy::kExcludeShort), 184u);
}

TEST(DigitFrequencies, ExampleColumn) {
  const DatasetColumn column{"x", {154, 23, 9}, 0};
  const auto first = digit_frequencies(column, DigitIndex(1));
  EXPECT_EQ(first.n(), 3u);
  EXPECT_EQ(first.count_of(1), 1u);
  EXPECT_EQ(first.count_of(2), 1u);
  EXPECT_EQ(first.count_of(9), 1u);
  EXPECT_EQ(first.excluded(), 0u);

  const auto second = digit_frequencies(column, DigitIndex(2));
  EXPECT_EQ(second.n(), 2u);
  EXPECT_EQ(second.excluded(), 1u);
  EXPECT_EQ(second.count_of(5), 1u);
  EXPECT_EQ(second.count_of(3), 1u);
  EXPECT_EQ(second.count_of(0), 0u);

  const auto padded = digit_frequencies(column, DigitIndex(2), ExclusionPolicy::kTrailingZero);
  EXPECT_EQ(padded.n(), 3u);
  EXPECT_EQ(padded.count_of(0), 1u);
}

TEST(DigitFrequencies, NothingToAnalyze) {
  EXPECT_THROW(digit_frequencies(DatasetColumn{"x", {}, 4}, DigitIndex(1)), NoAnalyzableValues);
  EXPECT_THROW(digit_frequencies(DatasetColumn{"x", {1, 7, 9}, 0}, DigitIndex(2)),
               NoAnalyzableValues);
}

TEST(JointFrequencies, Examples) {
  const auto pair = joint_frequencies(DatasetColumn{"x", {154, 23}, 0}, 2);
  EXPECT_EQ(pair.n(), 2u);
  EXPECT_EQ(pair.count_of(15), 1u);
  EXPECT_EQ(pair.count_of(23), 1u);

  std::vector<std::uint64_t> hundreds;
  for (std::uint64_t v = 100; v <= 199; ++v) hundreds.push_back(v);
  const auto block = joint_frequencies(DatasetColumn{"x", hundreds, 0}, 2);
  for (std::uint32_t d = 0; d <= 9; ++d) EXPECT_EQ(block.count_of(10 + d), 10u);
  EXPECT_EQ(block.n(), 100u);

  EXPECT_THROW(joint_frequencies(DatasetColumn{"x", {7}, 0}, 2), NoAnalyzableValues);
  EXPECT_THROW(joint_frequencies(DatasetColumn{"x", {154}, 0}, 1), std::invalid_argument);
  EXPECT_THROW(joint_frequencies(DatasetColumn{"x", {154}, 0}, 7), std::invalid_argument);
}

// Tabulation against a string oracle, across decades, policies and lengths.
TEST(Tabulate, MatchesStringOracle) {
  ValueGen gen(404);
  std::vector<std::uint64_t> values(10007);
  for (auto& v : values) v = gen.any();
  for (const auto policy : {ExclusionPolicy::kExcludeShort, ExclusionPolicy::kTrailingZero}) {
    const bool pad = policy == ExclusionPolicy::kTrailingZero;
    std::vector<DigitDomain> domains;
    for (int i = 1; i <= 19; ++i) domains.push_back(DigitDomain::marginal(DigitIndex(i)));
    for (int k = 2; k <= 4; ++k) domains.push_back(DigitDomain::joint(k));
    for (const auto& domain : domains) {
      std::vector<std::uint64_t> expected(domain.size(), 0);
      std::size_t excluded = 0;
      for (const auto v : values) {
        const auto prefix = string_prefix(v, domain.required_length(), pad);
        if (!prefix) {
          ++excluded;
          continue;
        }
        const std::uint64_t label =
            domain.kind() == DigitDomain::Kind::kJoint ? *prefix : *prefix % 10;
        for (std::size_t c = 0; c < domain.size(); ++c) {
          if (domain.label(c) == label) ++expected[c];
        }
      }
      const auto got = tabulate(values, domain, policy);
      EXPECT_EQ(std::vector<std::uint64_t>(got.counts().begin(), got.counts().end()), expected)
          << "digits=" << domain.digits();
      EXPECT_EQ(got.excluded(), excluded);
    }
  }
}

TEST(Tabulate, AnalyzedCountShrinksWithPosition) {
  ValueGen gen(505);
  for (int t = 0; t < 200; ++t) {
    std::vector<std::uint64_t> values(gen.between(1, 300));
    for (auto& v : values) v = gen.between(1, 10000000);
    const DatasetColumn column{"x", values, 0};
    std::uint64_t previous = column.m();
    for (int i = 1; i <= 8; ++i) {
      std::uint64_t n = 0;
      try {
        n = digit_frequencies(column, DigitIndex(i)).n();
      } catch (const NoAnalyzableValues&) {
        n = 0;
      }
      ASSERT_LE(n, previous);
      previous = n;
    }
  }
}

// Summing the joint table over its last digit recovers the first-digit table of
// the values long enough to enter the joint table.
TEST(Tabulate, JointMarginalizes) {
  ValueGen gen(606);
  for (int t = 0; t < 100; ++t) {
    std::vector<std::uint64_t> values(gen.between(10, 400));
    for (auto& v : values) v = gen.between(10, 99999999);
    const DatasetColumn column{"x", values, 0};
    const auto joint = joint_frequencies(column, 2);
    const auto first = digit_frequencies(column, DigitIndex(1));
    const auto second = digit_frequencies(column, DigitIndex(2));
    for (std::uint32_t d1 = 1; d1 <= 9; ++d1) {
      std::uint64_t sum = 0;
      for (std::uint32_t d2 = 0; d2 <= 9; ++d2) sum += joint.count_of(10 * d1 + d2);
      ASSERT_EQ(sum, first.count_of(d1));
    }
    for (std::uint32_t d2 = 0; d2 <= 9; ++d2) {
      std::uint64_t sum = 0;
      for (std::uint32_t d1 = 1; d1 <= 9; ++d1) sum += joint.count_of(10 * d1 + d2);
      ASSERT_EQ(sum, second.count_of(d2));
    }
  }
}

TEST(TabulateReals, ReadsMantissaDigits) {
  const std::vector<double> values = {0.154, 998.5, 0.00987, 3.0};
  const auto second = tabulate_reals(values, DigitDomain::marginal(DigitIndex(2)));
  EXPECT_EQ(second.n(), 4u);
  EXPECT_EQ(second.count_of(5), 1u);
  EXPECT_EQ(second.count_of(9), 1u);
  EXPECT_EQ(second.count_of(8), 1u);
  EXPECT_EQ(second.count_of(0), 1u);
  EXPECT_THROW(tabulate_reals(std::vector<double>{}, DigitDomain::marginal(DigitIndex(1))),
               NoAnalyzableValues);
}

TEST(ExclusionPolicy, RoundTrips) {
  for (const auto policy : {ExclusionPolicy::kExcludeShort, ExclusionPolicy::kTrailingZero}) {
    EXPECT_EQ(parse_exclusion_policy(to_string(policy)), policy);
  }
  EXPECT_THROW(parse_exclusion_policy("drop"), std::invalid_argument);
}

}  // namespace
}  // namespace nbscreen
