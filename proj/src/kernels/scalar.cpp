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

#include <cmath>

#include "internal.hpp"
#include "nbscreen/digits.hpp"

namespace nbscreen::kernels {
namespace detail {

std::uint64_t prefix_one(std::uint64_t x, int len, bool pad_short) noexcept {
  if (x == 0) return 0;
  const int nd = decimal_digit_count(x);
  if (nd >= len) return x / pow10_u64(nd - len);
  return pad_short ? x * pow10_u64(len - nd) : 0;
}

}  // namespace detail

namespace {

void leading_prefix_scalar(std::span<const std::uint64_t> values, int len, bool pad_short,
                           std::span<std::uint64_t> out) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    out[i] = detail::prefix_one(values[i], len, pad_short);
  }
}

double chi_square_cells_scalar(std::span<const double> probs, std::span<const double> props) {
  double sum = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] == 0.0) continue;
    const double diff = probs[i] - props[i];
    sum += diff * diff / probs[i];
  }
  return sum;
}

double weighted_log_sum_scalar(std::span<const double> weights, std::span<const double> log_probs) {
  double sum = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] == 0.0) continue;
    sum += weights[i] * log_probs[i];
  }
  return sum;
}

}  // namespace

const KernelSet& scalar() {
  static const KernelSet set{"scalar", &leading_prefix_scalar, &chi_square_cells_scalar,
                             &weighted_log_sum_scalar};
  return set;
}

}  // namespace nbscreen::kernels
