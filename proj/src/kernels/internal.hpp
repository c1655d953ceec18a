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

#include "nbscreen/kernels.hpp"

namespace nbscreen::kernels::detail {

// Defined in avx2.cpp, which is compiled with -mavx2 -mfma. Callers must
// check CPU support first.
const KernelSet& avx2_set();

// Scalar per-value prefix; shared by both kernel sets for fallback lanes.
std::uint64_t prefix_one(std::uint64_t x, int len, bool pad_short) noexcept;

}  // namespace nbscreen::kernels::detail
