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

#include <immintrin.h>

#include "internal.hpp"

namespace nbscreen::kernels::detail {
namespace {

// Values below 10^15 convert to double exactly, and floor(x / 10^s) computed
// in double is exact for them: the distance from x / 10^s to the next integer
// is at least 10^-s, which exceeds half an ulp of any quotient below 10^15.
constexpr std::uint64_t kSimdLimit = 1'000'000'000'000'000ULL;
constexpr int kMaxSimdLength = 15;

alignas(32) constexpr double kPow10[16] = {1e0, 1e1, 1e2,  1e3,  1e4,  1e5,  1e6,  1e7,
                                           1e8, 1e9, 1e10, 1e11, 1e12, 1e13, 1e14, 1e15};

// 2^52 as a bit pattern and as a double; or-ing an integer below 2^52 into
// the mantissa and subtracting 2^52 converts it exactly.
constexpr std::uint64_t kMagicBits = 0x4330000000000000ULL;
constexpr double kMagic = 4503599627370496.0;

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

void leading_prefix_avx2(std::span<const std::uint64_t> values, int len, bool pad_short,
                         std::span<std::uint64_t> out) {
  const std::size_t size = values.size();
  std::size_t i = 0;
  if (len <= kMaxSimdLength) {
    const __m256i zero = _mm256_setzero_si256();
    const __m256i limit = _mm256_set1_epi64x(static_cast<long long>(kSimdLimit - 1));
    const __m256i magic_bits = _mm256_set1_epi64x(static_cast<long long>(kMagicBits));
    const __m256d magic = _mm256_set1_pd(kMagic);
    const __m256i len_v = _mm256_set1_epi64x(len);
    const __m256i one = _mm256_set1_epi64x(1);

    for (; i + 4 <= size; i += 4) {
      const __m256i x = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(values.data() + i));
      // Signed compares: values >= 2^63 show up as negative.
      const __m256i bad = _mm256_or_si256(
          _mm256_or_si256(_mm256_cmpgt_epi64(x, limit), _mm256_cmpgt_epi64(zero, x)),
          _mm256_cmpeq_epi64(x, zero));
      if (!_mm256_testz_si256(bad, bad)) {
        for (std::size_t j = i; j < i + 4; ++j) out[j] = prefix_one(values[j], len, pad_short);
        continue;
      }

      const __m256d xd = _mm256_sub_pd(_mm256_castsi256_pd(_mm256_or_si256(x, magic_bits)), magic);

      __m256i digits = one;
      for (int e = 1; e < kMaxSimdLength; ++e) {
        const __m256d ge = _mm256_cmp_pd(xd, _mm256_set1_pd(kPow10[e]), _CMP_GE_OQ);
        digits = _mm256_sub_epi64(digits, _mm256_castpd_si256(ge));
      }

      const __m256i shift = _mm256_sub_epi64(digits, len_v);
      const __m256i is_short = _mm256_cmpgt_epi64(zero, shift);
      const __m256i down = _mm256_andnot_si256(is_short, shift);
      const __m256d divisor = _mm256_i64gather_pd(kPow10, down, 8);
      __m256d prefix = _mm256_floor_pd(_mm256_div_pd(xd, divisor));

      if (pad_short) {
        const __m256i up = _mm256_and_si256(is_short, _mm256_sub_epi64(zero, shift));
        const __m256d padded = _mm256_mul_pd(xd, _mm256_i64gather_pd(kPow10, up, 8));
        prefix = _mm256_blendv_pd(prefix, padded, _mm256_castsi256_pd(is_short));
      } else {
        prefix = _mm256_blendv_pd(prefix, _mm256_setzero_pd(), _mm256_castsi256_pd(is_short));
      }

      const __m256i bits = _mm256_xor_si256(_mm256_castpd_si256(_mm256_add_pd(prefix, magic)),
                                            magic_bits);
      _mm256_storeu_si256(reinterpret_cast<__m256i*>(out.data() + i), bits);
    }
  }
  for (; i < size; ++i) out[i] = prefix_one(values[i], len, pad_short);
}

double chi_square_cells_avx2(std::span<const double> probs, std::span<const double> props) {
  const std::size_t size = probs.size();
  const __m256d zero = _mm256_setzero_pd();
  __m256d acc = zero;
  std::size_t i = 0;
  for (; i + 4 <= size; i += 4) {
    const __m256d p = _mm256_loadu_pd(probs.data() + i);
    const __m256d f = _mm256_loadu_pd(props.data() + i);
    const __m256d diff = _mm256_sub_pd(p, f);
    const __m256d term = _mm256_div_pd(_mm256_mul_pd(diff, diff), p);
    const __m256d empty = _mm256_cmp_pd(p, zero, _CMP_EQ_OQ);
    acc = _mm256_add_pd(acc, _mm256_blendv_pd(term, zero, empty));
  }
  double sum = hsum(acc);
  for (; i < size; ++i) {
    if (probs[i] == 0.0) continue;
    const double diff = probs[i] - props[i];
    sum += diff * diff / probs[i];
  }
  return sum;
}

double weighted_log_sum_avx2(std::span<const double> weights, std::span<const double> log_probs) {
  const std::size_t size = weights.size();
  const __m256d zero = _mm256_setzero_pd();
  __m256d acc = zero;
  std::size_t i = 0;
  for (; i + 4 <= size; i += 4) {
    const __m256d w = _mm256_loadu_pd(weights.data() + i);
    const __m256d lp = _mm256_loadu_pd(log_probs.data() + i);
    const __m256d unused = _mm256_cmp_pd(w, zero, _CMP_EQ_OQ);
    acc = _mm256_add_pd(acc, _mm256_blendv_pd(_mm256_mul_pd(w, lp), zero, unused));
  }
  double sum = hsum(acc);
  for (; i < size; ++i) {
    if (weights[i] == 0.0) continue;
    sum += weights[i] * log_probs[i];
  }
  return sum;
}

}  // namespace

const KernelSet& avx2_set() {
  static const KernelSet set{"avx2", &leading_prefix_avx2, &chi_square_cells_avx2,
                             &weighted_log_sum_avx2};
  return set;
}

}  // namespace nbscreen::kernels::detail
