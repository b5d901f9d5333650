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

#ifndef LATENTSTEGO_CODEC_HPP_
#define LATENTSTEGO_CODEC_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "stego/common.hpp"

namespace stego {

// Payload bits. Each element is 0 or 1.
struct BitMessage {
  std::vector<std::uint8_t> bits;

  size_t size() const { return bits.size(); }
};

// Per-bit uniform samples s_i: bit 0 puts s_i in (0,0.5), bit 1 in [0.5,1).
struct UniformVector {
  std::vector<double> values;

  size_t size() const { return values.size(); }
};

// Seed for the within-interval sampler. Deterministic replay: same key and
// message give the same uniforms. Not part of the shared secret; the receiver
// decodes from signs only.
struct StegoKey {
  std::uint64_t seed = 0;
};

enum class SampleMode {
  kRandom,    // uniform within the half-interval (distribution-preserving)
  kMidpoint,  // interval midpoint: deterministic, maximal sign margin
};

std::string to_string(SampleMode mode);
SampleMode parse_sample_mode(const std::string& s);

// Maps message bits to stratified uniforms. Bit 0 -> s in (0,0.5),
// bit 1 -> s in [0.5,1). Never emits 0, and emits 0.5 only for bit 1.
UniformVector bits_to_uniform(const BitMessage& msg, StegoKey key, SampleMode mode);

// Standard normal quantile. Inputs are clamped to [2^-40, 1-2^-40] before
// evaluation; NaN is rejected. Accuracy: |Phi(result) - p| <= 1e-12 over
// [1e-10, 1-1e-10].
double inverse_normal_cdf(double p);

// Standard normal CDF via the complementary error function.
double normal_cdf(double z);

// Elementwise quantile transform of the uniforms into a latent of the given
// shape. sign(z_i) < 0 iff s_i < 0.5.
LatentTensor uniform_to_latent(const UniformVector& s, Shape3 shape);

// Zero-threshold decoding: bit_i = 0 if z_i < 0, else 1 (ties at zero decode
// to 1). NaN elements are rejected.
BitMessage latent_to_bits(const LatentTensor& z);

// Fraction of positions where the two messages agree.
double bit_accuracy(const BitMessage& a, const BitMessage& b);

// Bernoulli(0.5) message of length n drawn from the given seed.
BitMessage random_message(size_t n, std::uint64_t seed);

}  // namespace stego

#endif  // LATENTSTEGO_CODEC_HPP_
