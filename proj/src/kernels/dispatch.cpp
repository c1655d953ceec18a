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

#include <cstdlib>
#include <iostream>
#include <string_view>

#include "internal.hpp"

namespace nbscreen::kernels {

const KernelSet* avx2() {
#if defined(NBSCREEN_HAVE_AVX2)
  static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return supported ? &detail::avx2_set() : nullptr;
#else
  return nullptr;
#endif
}

const KernelSet& active() {
  static const KernelSet& chosen = []() -> const KernelSet& {
    const char* env = std::getenv("NBSCREEN_KERNELS");
    const std::string_view want = env ? env : "";
    if (want == "scalar") return scalar();
    if (want == "avx2") {
      if (const KernelSet* k = avx2()) return *k;
      std::cerr << "nbscreen: NBSCREEN_KERNELS=avx2 requested but unavailable; using scalar\n";
      return scalar();
    }
    if (const KernelSet* k = avx2()) return *k;
    return scalar();
  }();
  return chosen;
}

}  // namespace nbscreen::kernels
