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

#ifndef LATENTSTEGO_OPTIMIZER_HPP_
#define LATENTSTEGO_OPTIMIZER_HPP_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "stego/codec.hpp"
#include "stego/common.hpp"
#include "stego/generator.hpp"

namespace stego {

enum class EtaPolicy {
  kFixed,  // use cfg.eta as given; descent is not guaranteed, only recorded
  kAuto,   // eta = auto_safety * 2 / L^2 with the certified Lipschitz bound
};

struct OptimizerConfig {
  int steps = 100;
  double eta = 1.0;
  EtaPolicy eta_policy = EtaPolicy::kAuto;
  double auto_safety = 0.9;
  double grad_tol = 0.0;  // early stop when ||grad|| < grad_tol; 0 disables
  bool record_trace = true;

  std::string str() const;
};

// One record per executed update.
struct TraceRow {
  int step = 0;
  double loss = 0.0;        // L before the update
  double grad_norm = 0.0;   // ||grad L||
  double step_norm = 0.0;   // ||eta * grad||, the applied update magnitude
  double recon_norm = 0.0;  // ||D(z) - x_recv||
  double bound_value = 0.0; // eta * L_cert * recon_norm
  bool bound_ok = false;    // step_norm <= bound_value (tiny slack for rounding)
};

struct OptimizationTrace {
  std::vector<TraceRow> rows;
  double eta_used = 0.0;
  double lipschitz_used = 0.0;  // certified bound the trace was checked against
  double final_loss = 0.0;
  bool early_stopped = false;
};

// Per-trace verification of the update identity ||dz|| = eta*||grad|| and the
// contraction bound ||dz|| <= eta*L*||D(z)-x||.
struct BoundReport {
  int steps = 0;
  double eta = 0.0;
  double lipschitz = 0.0;
  double max_identity_residual = 0.0;  // relative to the step norm
  double min_bound_slack = 0.0;        // min over steps of bound - step
  int identity_violations = 0;         // residual > 1e-9
  int bound_violations = 0;            // slack < -1e-9

  bool ok() const { return identity_violations == 0 && bound_violations == 0; }
};

// Thrown when the loss stops being finite; carries the partial trace.
struct OptimizationError : NumericFailure {
  OptimizationError(const std::string& msg, OptimizationTrace partial)
      : NumericFailure(msg), trace(std::move(partial)) {}
  OptimizationTrace trace;
};

// Gradient descent on L(z) = 0.5*||D(z) - x_recv||^2 with the received image
// held fixed. Returns the refined latent and the per-step trace.
std::pair<LatentTensor, OptimizationTrace> refine_latent(const GeneratorParams& params,
                                                         const LatentTensor& z_init,
                                                         const ImageTensor& x_recv,
                                                         const OptimizerConfig& cfg);

BoundReport verify_trace(const OptimizationTrace& trace, double lipschitz, double eta);

// Full receiver path: encode, refine, invert the denoiser, threshold-decode.
// steps = 0 gives the non-optimized baseline bit-for-bit.
std::pair<BitMessage, OptimizationTrace> extract_with_optimization(
    const GeneratorParams& params, const ImageTensor& x_recv, const OptimizerConfig& cfg);

// FNV-1a hash of the canonical config text; lets callers assert that two runs
// used the identical optimizer configuration.
std::uint64_t config_hash(const OptimizerConfig& cfg);

std::string to_string(EtaPolicy policy);

}  // namespace stego

#endif  // LATENTSTEGO_OPTIMIZER_HPP_
