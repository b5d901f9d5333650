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

#ifndef LATENTSTEGO_SECURITY_HPP_
#define LATENTSTEGO_SECURITY_HPP_

#include <span>
#include <string>

#include "stego/codec.hpp"
#include "stego/common.hpp"

namespace stego {

// Outcome of a single goodness-of-fit check. These tests verify the
// sender-side distributions only; nothing here consumes receiver state.
struct GoodnessReport {
  std::string test;
  size_t n = 0;
  double statistic = 0.0;
  double p_value = 0.0;
  double alpha = 0.01;
  bool pass = false;
};

// Survival function Q(t) of the Kolmogorov distribution (asymptotic law of
// sqrt(n)*D_n).
double kolmogorov_p_value(double t);

// One-sample Kolmogorov-Smirnov test of the samples against N(0,1).
GoodnessReport ks_test_gaussian(std::span<const double> samples, double alpha = 0.01);

// One-sample KS test against Uniform(0,1).
GoodnessReport ks_test_uniform(std::span<const double> samples, double alpha = 0.01);

// Histogram KL divergence (nats) between the samples and N(0,1), over `bins`
// equal-width cells on [-4,4] whose outermost cells absorb the tails. Empty
// cells get add-one smoothing. Requires bins >= 8 and n >= 100*bins.
double empirical_kl(std::span<const double> samples, int bins);

// Checks that the fraction of s in [0.5,1) is within 3 binomial sigma of the
// expected ones-rate (0.5 for an encrypted message; pass the message's
// empirical rate for biased payloads).
GoodnessReport half_interval_balance(const UniformVector& s, double expected_ones_rate);

// KS uniformity plus the half-interval balance check. Midpoint-mode inputs
// fail this decisively; that is the intended signal that the deterministic
// mode is not distribution-preserving.
GoodnessReport uniformity_test(const UniformVector& s, double expected_ones_rate = 0.5,
                               double alpha = 0.01);

std::string report_json(const GoodnessReport& report);

}  // namespace stego

#endif  // LATENTSTEGO_SECURITY_HPP_
