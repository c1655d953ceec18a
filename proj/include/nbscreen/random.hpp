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
#include <random>

namespace nbscreen {

/// SplitMix64 finalizer; used to derive engine seeds.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Seedable random source with portable output.
///
/// The engine is std::mt19937_64, whose sequence is fixed by the standard.
/// The distributions are implemented here rather than taken from <random>,
/// whose algorithms differ between standard libraries.
///
/// Stream rule: Rng(seed, stream) seeds the engine with
/// splitmix64(seed ^ splitmix64(stream + 1)). Independent units of work
/// (one polling unit, one replicate) get distinct stream ids, so results do
/// not depend on the order or thread they are generated on.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform on the open interval (0, 1), 53-bit resolution.
  double uniform();
  /// Standard normal (Box-Muller, one variate per call).
  double normal();
  /// Gamma(shape, 1) by Marsaglia-Tsang; shape < 1 via the u^(1/shape) boost.
  double gamma(double shape);
  /// Beta(a, b) as X / (X + Y) with X ~ Gamma(a), Y ~ Gamma(b).
  double beta(double a, double b);
  /// Binomial(n, p): inversion when min(p, 1-p) * n < 30, otherwise
  /// Hormann's BTRS transformed rejection.
  std::uint64_t binomial(std::uint64_t n, double p);

 private:
  std::uint64_t binomial_inversion(std::uint64_t n, double p);
  std::uint64_t binomial_btrs(std::uint64_t n, double p);

  std::mt19937_64 engine_;
};

}  // namespace nbscreen
