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

namespace nbscreen::special {

/// ln Gamma(x) for x > 0. Lanczos approximation (g = 7, 9 terms); returns
/// exactly 0 at x = 1 and x = 2.
double log_gamma(double x);

/// Regularized lower incomplete gamma P(a, x), a > 0, x >= 0.
double gamma_p(double a, double x);

/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x), a > 0, x >= 0.
/// Computed directly (not as 1 - P) on the continued-fraction branch, so small
/// tails keep their relative accuracy.
double gamma_q(double a, double x);

/// Upper tail Pr(X >= x) of a chi-squared distribution with `df` degrees of
/// freedom: Q(df/2, x/2).
double chi_squared_upper_tail(double x, int df);

}  // namespace nbscreen::special
