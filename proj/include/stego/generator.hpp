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

#ifndef LATENTSTEGO_GENERATOR_HPP_
#define LATENTSTEGO_GENERATOR_HPP_

#include <cstdint>
#include <utility>
#include <vector>

#include "stego/common.hpp"

namespace stego {

// Knobs for the surrogate generator. Defaults are the desk-scale operating
// point used by the benchmark harness.
struct GeneratorOptions {
  int hidden_width = 3;       // per-phase hidden channels, must be <= image channels
  double alpha = 1.0;         // tanh slope of the hidden nonlinearity
  double input_gain = 1.0;    // scale of the first (phase) layer
  double output_gain = 2.5;   // scale of the second (mixing) layer
  double bias_scale = 0.45;   // stddev of the hidden-layer bias
  double latent_bias_scale = 0.05;  // stddev of the denoiser bias b

  // Test hook: replaces both nonlinearities with the identity and zeroes the
  // hidden bias, so the decoder is exactly linear.
  bool linear_hook = false;
};

// Fixed, seed-reproducible surrogate pipeline:
//   denoiser      z0 = Q*zT + b           (Q orthogonal, exactly invertible)
//   decoder       x  = sigmoid(W2 * tanh(alpha*(W1*up(z0) + c1)))
//   encoder       analytic pseudo-inverse of the decoder chain
// up() is k-fold nearest-neighbour upsampling; W1/W2 are per-phase 1x1 maps
// shared across latent sites. Immutable after construction; safe to share
// across threads.
struct GeneratorParams {
  std::uint64_t seed = 0;
  Shape3 latent;
  ImageShape image;
  int upsample = 1;  // k: image height / latent height
  GeneratorOptions options;

  // Denoiser: row-major n x n orthogonal matrix and bias.
  std::vector<double> q;
  std::vector<double> bias;

  // Decoder layer 1: stacked per-phase weights, (k*k*m) x c row-major.
  // Row p*m+j holds hidden unit j of phase p = py*k + px.
  std::vector<double> w1;
  std::vector<double> c1;  // k*k*m hidden biases

  // Decoder layer 2: per phase, image_channels x m row-major.
  std::vector<double> w2;

  // Caches built at construction.
  std::vector<double> w2_pinv;   // per phase, m x image_channels (exact left inverse)
  std::vector<double> gram_inv;  // c x c inverse of W1^T W1 (stacked)
  double certified_lipschitz = 0.0;  // analytic global bound on ||J_D||_2

  int latent_size() const { return latent.size(); }
  int phase_count() const { return upsample * upsample; }
};

struct LipschitzEstimate {
  double value = 0.0;   // max over probes of the local spectral norm of J_D
  int iterations = 0;   // power-iteration steps used by the worst probe
  double residual = 0.0;  // relative change of the estimate at termination
  std::vector<double> per_probe;
};

GeneratorParams make_generator(std::uint64_t seed, Shape3 latent_shape,
                               ImageShape image_shape,
                               const GeneratorOptions& options = {});

// z0 = Q*zT + b. Exactly invertible.
LatentTensor denoise(const GeneratorParams& params, const LatentTensor& z_t);

// zT = Q^T*(z0 - b).
LatentTensor invert_denoise(const GeneratorParams& params, const LatentTensor& z0);

// Deterministic, everywhere-differentiable decode; output in [0,1].
ImageTensor decode_image(const GeneratorParams& params, const LatentTensor& z0);

// Approximate left inverse of decode_image: un-squash, invert the mixing
// layer, invert the nonlinearity on its clamped range, then pseudo-invert the
// stacked phase layer. Out-of-range pixels are clamped, never rejected.
LatentTensor encode_image(const GeneratorParams& params, const ImageTensor& x);

// L(z) = 0.5*||D(z) - x_ref||^2 and its exact gradient (reverse-mode through
// the decoder layers, fused with the forward pass).
std::pair<double, LatentTensor> loss_and_gradient(const GeneratorParams& params,
                                                  const LatentTensor& z,
                                                  const ImageTensor& x_ref);

// Directional derivative J_D(z) * v.
ImageTensor decoder_jvp(const GeneratorParams& params, const LatentTensor& z,
                        const LatentTensor& v);

// Transpose action J_D(z)^T * w.
LatentTensor decoder_vjp(const GeneratorParams& params, const LatentTensor& z,
                         const ImageTensor& w);

// Max over `probes` random latents of the top singular value of J_D, each by
// power iteration on J^T J with Jacobian-vector / vector-Jacobian products.
LipschitzEstimate estimate_lipschitz(const GeneratorParams& params, int probes,
                                     int iters, std::uint64_t probe_seed = 0x5EED);

// N(0,I) latent of the given shape, for probes and Monte-Carlo tests.
LatentTensor gaussian_latent(Shape3 shape, std::uint64_t seed);

}  // namespace stego

#endif  // LATENTSTEGO_GENERATOR_HPP_
