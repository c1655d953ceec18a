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

// Data-parallel inner loops. Each kernel has a scalar reference version and,
// on x86-64, an AVX2 version picked at runtime. Both must agree: prefixes
// exactly, floating-point sums to rounding.

#include <cstdint>
#include <span>
#include <string_view>

namespace nbscreen::kernels {

/// For each value (>= 1), writes its leading `len` digits as an integer
/// (1 <= len <= 19). Values with fewer than `len` digits yield 0, or are
/// right-padded with zeros when `pad_short` is set. out.size() == values.size().
using LeadingPrefixFn = void (*)(std::span<const std::uint64_t> values, int len, bool pad_short,
                                 std::span<std::uint64_t> out);

/// Sum over cells of (p - f)^2 / p. Cells with p == 0 are skipped.
using ChiSquareCellsFn = double (*)(std::span<const double> probs, std::span<const double> props);

/// Sum of w_i * log_p_i, where cells with w_i == 0 contribute 0 even when
/// log_p_i is -inf.
using WeightedLogSumFn = double (*)(std::span<const double> weights,
                                    std::span<const double> log_probs);

struct KernelSet {
  std::string_view name;
  LeadingPrefixFn leading_prefix;
  ChiSquareCellsFn chi_square_cells;
  WeightedLogSumFn weighted_log_sum;
};

const KernelSet& scalar();

/// The AVX2 set, or nullptr if it was not compiled in or the CPU lacks AVX2.
const KernelSet* avx2();

/// The set used by the library. Chosen once per process: the environment
/// variable NBSCREEN_KERNELS=scalar|avx2 forces a choice, otherwise the best
/// available set wins.
const KernelSet& active();

}  // namespace nbscreen::kernels
