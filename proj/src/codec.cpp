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

#include "stego/codec.hpp"

#include <cmath>

#include "stego/rng.hpp"

namespace stego {
namespace {

constexpr double kClampEps = 0x1.0p-40;  // quantile input clamp
constexpr double kSqrt2Pi = 2.506628274631000502415765284811;

// Rational approximation for the standard normal quantile (P. Acklam's
// coefficients, absolute error ~1e-9), used as the starting point for one
// Halley refinement step against the erfc-based CDF.
double quantile_estimate(double p) {
  static const double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                              -2.759285104469687e+02, 1.383577518672690e+02,
                              -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                              -1.556989798598866e+02, 6.680131188771972e+01,
                              -1.328068155288572e+01};
  static const double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                              -2.400758277161838e+00, -2.549732539343734e+00,
                              4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                              2.445134137142996e+00, 3.754408661907416e+00};
  const double p_low = 0.02425;

  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p <= 1.0 - p_low) {
    const double q = p - 0.5;
    const double r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  }
  const double q = std::sqrt(-2.0 * std::log(1.0 - p));
  return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
         ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
}

// Solves Phi(z) = p for p in (0, 0.5]; full precision in the lower tail.
double quantile_lower_half(double p) {
  double z = quantile_estimate(p);
  // One Halley step. err is computed against the complement-accurate CDF so
  // the tail keeps full relative precision.
  const double err = 0.5 * std::erfc(-z / std::sqrt(2.0)) - p;
  const double u = err * kSqrt2Pi * std::exp(0.5 * z * z);
  z -= u / (1.0 + 0.5 * z * u);
  return z;
}

}  // namespace

std::string to_string(SampleMode mode) {
  return mode == SampleMode::kRandom ? "random" : "midpoint";
}

SampleMode parse_sample_mode(const std::string& s) {
  if (s == "random") return SampleMode::kRandom;
  if (s == "midpoint") return SampleMode::kMidpoint;
  throw InvalidInput("unknown sample mode: " + s);
}

UniformVector bits_to_uniform(const BitMessage& msg, StegoKey key, SampleMode mode) {
  require(!msg.bits.empty(), "bits_to_uniform: empty message");
  UniformVector s;
  s.values.reserve(msg.bits.size());
  Rng rng(key.seed);
  for (std::uint8_t bit : msg.bits) {
    require(bit == 0 || bit == 1, "bits_to_uniform: message element not 0/1");
    double v;
    if (mode == SampleMode::kMidpoint) {
      v = bit ? 0.75 : 0.25;
    } else {
      // next_unit() is strictly inside (0,1), so v lands strictly inside the
      // half-interval for the bit.
      const double u = rng.next_unit();
      v = bit ? 0.5 + 0.5 * u : 0.5 * u;
    }
    s.values.push_back(v);
  }
  return s;
}

double normal_cdf(double z) {
  const double inv_sqrt2 = 0.70710678118654752440084436210485;
  if (z < 0.0) return 0.5 * std::erfc(-z * inv_sqrt2);
  return 1.0 - 0.5 * std::erfc(z * inv_sqrt2);
}

double inverse_normal_cdf(double p) {
  if (std::isnan(p)) throw InvalidInput("inverse_normal_cdf: NaN input");
  if (p < kClampEps) p = kClampEps;
  if (p > 1.0 - kClampEps) p = 1.0 - kClampEps;
  // For p above the median, solve on the complement. 1-p is exact for
  // p >= 0.5, so both tails get the same relative precision.
  if (p > 0.5) return -quantile_lower_half(1.0 - p);
  return quantile_lower_half(p);
}

LatentTensor uniform_to_latent(const UniformVector& s, Shape3 shape) {
  require(shape.c > 0 && shape.h > 0 && shape.w > 0,
          "uniform_to_latent: non-positive shape");
  require(static_cast<int>(s.size()) == shape.size(),
          "uniform_to_latent: " + std::to_string(s.size()) +
              " values do not fill shape " + shape.str());
  LatentTensor z;
  z.shape = shape;
  z.values.reserve(s.size());
  for (double v : s.values) z.values.push_back(inverse_normal_cdf(v));
  return z;
}

BitMessage latent_to_bits(const LatentTensor& z) {
  BitMessage msg;
  msg.bits.reserve(z.values.size());
  for (double v : z.values) {
    if (std::isnan(v)) throw InvalidInput("latent_to_bits: NaN latent element");
    msg.bits.push_back(v < 0.0 ? 0 : 1);
  }
  return msg;
}

double bit_accuracy(const BitMessage& a, const BitMessage& b) {
  require(a.size() == b.size(), "bit_accuracy: length mismatch");
  require(!a.bits.empty(), "bit_accuracy: empty messages");
  size_t agree = 0;
  for (size_t i = 0; i < a.bits.size(); ++i) {
    if (a.bits[i] == b.bits[i]) ++agree;
  }
  return static_cast<double>(agree) / static_cast<double>(a.bits.size());
}

BitMessage random_message(size_t n, std::uint64_t seed) {
  require(n >= 1, "random_message: n must be >= 1");
  BitMessage msg;
  msg.bits.reserve(n);
  Rng rng(seed);
  for (size_t i = 0; i < n; ++i) msg.bits.push_back(rng.next_bit() ? 1 : 0);
  return msg;
}

}  // namespace stego
