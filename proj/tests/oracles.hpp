// Copyright 2026 latentstego authors.
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
//
// Test-only reference implementations, deliberately independent of the code
// under test: the normal CDF here comes from quadrature of the density, and
// the quantile from bisection on it.

#ifndef LATENTSTEGO_TESTS_ORACLES_HPP_
#define LATENTSTEGO_TESTS_ORACLES_HPP_

#include <cmath>
#include <stdexcept>

namespace oracles {

// Composite Simpson over [0,z] with interval doubling until the value settles.
inline double simpson_normal_mass(double z) {
  const double inv_sqrt2pi = 0.39894228040143267793994605993438;
  auto density = [&](double t) { return inv_sqrt2pi * std::exp(-0.5 * t * t); };
  double prev = 0.0;
  for (int k = 6; k <= 22; ++k) {
    const long n = 1L << k;  // panels, even
    const double h = z / static_cast<double>(n);
    double acc = density(0.0) + density(z);
    for (long i = 1; i < n; ++i) {
      acc += density(h * static_cast<double>(i)) * (i % 2 == 1 ? 4.0 : 2.0);
    }
    const double value = acc * h / 3.0;
    if (k > 8 && std::fabs(value - prev) < 1e-15) return value;
    prev = value;
  }
  return prev;
}

inline double normal_cdf(double z) {
  if (z == 0.0) return 0.5;
  if (z < 0.0) return 0.5 - simpson_normal_mass(-z);
  return 0.5 + simpson_normal_mass(z);
}

// Bisection on normal_cdf(z) - p over [-9, 9].
inline double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("oracle quantile: p out of (0,1)");
  double lo = -9.0, hi = 9.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (normal_cdf(mid) < p) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo < 1e-14) break;
  }
  return 0.5 * (lo + hi);
}

}  // namespace oracles

#endif  // LATENTSTEGO_TESTS_ORACLES_HPP_
