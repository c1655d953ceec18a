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

#include "nbscreen/digits.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <numeric>

#include "nbscreen/kernels.hpp"

namespace nbscreen {
namespace {

constexpr std::array<std::uint64_t, 20> kPow10 = [] {
  std::array<std::uint64_t, 20> p{};
  p[0] = 1;
  for (std::size_t e = 1; e < p.size(); ++e) p[e] = p[e - 1] * 10;
  return p;
}();

constexpr int kMaxJointLength = 6;
constexpr std::size_t kMaxTabulatedLength = 19;

}  // namespace

std::string_view to_string(ExclusionPolicy policy) {
  switch (policy) {
    case ExclusionPolicy::kExcludeShort: return "exclude-short";
    case ExclusionPolicy::kTrailingZero: return "trailing-zero";
  }
  return "unknown";
}

ExclusionPolicy parse_exclusion_policy(std::string_view text) {
  if (text == "exclude-short") return ExclusionPolicy::kExcludeShort;
  if (text == "trailing-zero") return ExclusionPolicy::kTrailingZero;
  throw std::invalid_argument("unknown exclusion policy '" + std::string(text) +
                              "' (expected exclude-short or trailing-zero)");
}

DigitDomain DigitDomain::joint(int k) {
  if (k < 2 || k > kMaxJointLength) {
    throw std::invalid_argument("joint prefix length must be in [2, 6]");
  }
  return DigitDomain(Kind::kJoint, k);
}

std::size_t DigitDomain::size() const noexcept {
  if (kind_ == Kind::kJoint) return 9 * kPow10[digits_ - 1];
  return digits_ == 1 ? 9 : 10;
}

std::uint32_t DigitDomain::label(std::size_t c) const noexcept {
  if (kind_ == Kind::kJoint) return static_cast<std::uint32_t>(kPow10[digits_ - 1] + c);
  return static_cast<std::uint32_t>(digits_ == 1 ? c + 1 : c);
}

std::vector<std::uint32_t> DigitDomain::labels() const {
  std::vector<std::uint32_t> out(size());
  for (std::size_t c = 0; c < out.size(); ++c) out[c] = label(c);
  return out;
}

std::size_t DigitDomain::cell_of_prefix(std::uint64_t prefix) const noexcept {
  if (kind_ == Kind::kJoint) return static_cast<std::size_t>(prefix - kPow10[digits_ - 1]);
  const auto digit = static_cast<std::size_t>(prefix % 10);
  return digits_ == 1 ? digit - 1 : digit;
}

CountVector::CountVector(DigitDomain domain, std::vector<std::uint64_t> counts,
                         std::size_t excluded)
    : domain_(domain), counts_(std::move(counts)), excluded_(excluded) {
  if (counts_.size() != domain_.size()) {
    throw std::invalid_argument("count vector size does not match its digit domain");
  }
  n_ = std::accumulate(counts_.begin(), counts_.end(), std::uint64_t{0});
}

std::uint64_t CountVector::count_of(std::uint32_t label) const {
  for (std::size_t c = 0; c < counts_.size(); ++c) {
    if (domain_.label(c) == label) return counts_[c];
  }
  throw std::out_of_range("label " + std::to_string(label) + " is not in the digit domain");
}

std::vector<double> CountVector::proportions() const {
  if (n_ == 0) throw std::domain_error("proportions of an empty count vector");
  std::vector<double> f(counts_.size());
  const double total = static_cast<double>(n_);
  for (std::size_t c = 0; c < f.size(); ++c) f[c] = static_cast<double>(counts_[c]) / total;
  return f;
}

int decimal_digit_count(std::uint64_t x) noexcept {
  int digits = 1;
  while (digits < 20 && x >= kPow10[digits]) ++digits;
  return digits;
}

std::uint64_t pow10_u64(int e) noexcept { return kPow10[e]; }

std::optional<std::uint64_t> leading_prefix(std::uint64_t x, int len, ExclusionPolicy policy) {
  const int nd = decimal_digit_count(x);
  if (nd >= len) return x / kPow10[nd - len];
  if (policy == ExclusionPolicy::kExcludeShort) return std::nullopt;
  return x * kPow10[len - nd];
}

namespace detail {

int integer_significant_digit(std::uint64_t x, int i) {
  const int nd = decimal_digit_count(x);
  if (i > nd) return 0;
  return static_cast<int>((x / kPow10[nd - i]) % 10);
}

}  // namespace detail

namespace {

// Significant digits of the shortest round-trip form: 0.154 -> "154".
std::string real_mantissa(double x) {
  if (!std::isfinite(x)) throw std::domain_error("significant digit requires a finite value");
  if (x <= 0.0) throw std::domain_error("significant digit requires x > 0");
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x,
                                 std::chars_format::scientific);
  std::string mantissa;
  for (const char* p = buf.data(); p != res.ptr && *p != 'e'; ++p) {
    if (*p != '.') mantissa.push_back(*p);
  }
  return mantissa;
}

}  // namespace

int significant_digit(double x, DigitIndex i) {
  const std::string mantissa = real_mantissa(x);
  const auto pos = static_cast<std::size_t>(i.value() - 1);
  return pos < mantissa.size() ? mantissa[pos] - '0' : 0;
}

CountVector tabulate_reals(std::span<const double> values, const DigitDomain& domain) {
  const auto len = static_cast<std::size_t>(domain.required_length());
  if (len > kMaxTabulatedLength) {
    throw std::invalid_argument("digit position beyond 19 cannot be tabulated");
  }
  std::vector<std::uint64_t> counts(domain.size(), 0);
  for (const double x : values) {
    const std::string mantissa = real_mantissa(x);
    std::uint64_t prefix = 0;
    for (std::size_t p = 0; p < len; ++p) {
      prefix = prefix * 10 + static_cast<std::uint64_t>(p < mantissa.size() ? mantissa[p] - '0' : 0);
    }
    ++counts[domain.cell_of_prefix(prefix)];
  }
  CountVector result(domain, std::move(counts), 0);
  if (result.n() == 0) throw NoAnalyzableValues();
  return result;
}

CountVector tabulate(std::span<const std::uint64_t> values, const DigitDomain& domain,
                     ExclusionPolicy policy) {
  const int len = domain.required_length();
  if (static_cast<std::size_t>(len) > kMaxTabulatedLength) {
    throw std::invalid_argument("digit position beyond 19 cannot be tabulated");
  }
  const bool pad = policy == ExclusionPolicy::kTrailingZero;
  const auto& kernels = kernels::active();

  std::vector<std::uint64_t> counts(domain.size(), 0);
  std::size_t excluded = 0;
  constexpr std::size_t kChunk = 4096;
  std::vector<std::uint64_t> prefixes(std::min(kChunk, values.size()));
  for (std::size_t start = 0; start < values.size(); start += kChunk) {
    const auto chunk = values.subspan(start, std::min(kChunk, values.size() - start));
    const std::span<std::uint64_t> out(prefixes.data(), chunk.size());
    kernels.leading_prefix(chunk, len, pad, out);
    for (const std::uint64_t prefix : out) {
      if (prefix == 0) {
        ++excluded;
        continue;
      }
      ++counts[domain.cell_of_prefix(prefix)];
    }
  }
  CountVector result(domain, std::move(counts), excluded);
  if (result.n() == 0) throw NoAnalyzableValues();
  return result;
}

CountVector digit_frequencies(const DatasetColumn& column, DigitIndex i, ExclusionPolicy policy) {
  return tabulate(column.values, DigitDomain::marginal(i), policy);
}

CountVector joint_frequencies(const DatasetColumn& column, int k, ExclusionPolicy policy) {
  return tabulate(column.values, DigitDomain::joint(k), policy);
}

}  // namespace nbscreen
