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

#include "stego/optimizer.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

namespace stego {
namespace {

double vec_norm(const std::vector<double>& v) {
  double acc = 0.0;
  for (double x : v) acc += x * x;
  return std::sqrt(acc);
}

}  // namespace

std::string to_string(EtaPolicy policy) {
  return policy == EtaPolicy::kAuto ? "auto" : "fixed";
}

std::string OptimizerConfig::str() const {
  char buf[160];
  std::snprintf(buf, sizeof(buf), "steps=%d;eta=%.17g;policy=%s;safety=%.17g;grad_tol=%.17g",
                steps, eta, to_string(eta_policy).c_str(), auto_safety, grad_tol);
  return buf;
}

std::uint64_t config_hash(const OptimizerConfig& cfg) {
  const std::string s = cfg.str();
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001B3ull;
  }
  return h;
}

std::pair<LatentTensor, OptimizationTrace> refine_latent(const GeneratorParams& params,
                                                         const LatentTensor& z_init,
                                                         const ImageTensor& x_recv,
                                                         const OptimizerConfig& cfg) {
  require(cfg.steps >= 0, "refine_latent: steps must be >= 0");
  require(cfg.eta > 0.0, "refine_latent: eta must be positive");
  require(cfg.auto_safety > 0.0 && cfg.auto_safety < 1.0,
          "refine_latent: auto_safety must lie in (0,1)");
  require(z_init.shape == params.latent, "refine_latent: latent shape mismatch");
  require(x_recv.shape == params.image, "refine_latent: image shape mismatch");

  const double lip = params.certified_lipschitz;
  const double eta = cfg.eta_policy == EtaPolicy::kAuto
                         ? cfg.auto_safety * 2.0 / (lip * lip)
                         : cfg.eta;

  OptimizationTrace trace;
  trace.eta_used = eta;
  trace.lipschitz_used = lip;
  if (cfg.record_trace) trace.rows.reserve(cfg.steps);

  LatentTensor z = z_init;
  double loss = 0.0;
  for (int step = 0; step < cfg.steps; ++step) {
    auto [l, grad] = loss_and_gradient(params, z, x_recv);
    loss = l;
    if (!std::isfinite(loss)) {
      trace.final_loss = loss;
      throw OptimizationError("refine_latent: non-finite loss at step " +
                                  std::to_string(step),
                              std::move(trace));
    }
    const double grad_norm = vec_norm(grad.values);
    if (cfg.grad_tol > 0.0 && grad_norm < cfg.grad_tol) {
      trace.early_stopped = true;
      break;
    }
    // The update vector is materialized and its norm measured on the applied
    // values, so the trace identity ||dz|| = eta*||grad|| reflects what was
    // actually added to z.
    double step_sq = 0.0;
    for (size_t i = 0; i < z.values.size(); ++i) {
      const double dz = eta * grad.values[i];
      step_sq += dz * dz;
      z.values[i] -= dz;
    }
    const double step_norm = std::sqrt(step_sq);
    const double recon = std::sqrt(2.0 * loss);
    const double bound = eta * lip * recon;
    if (cfg.record_trace) {
      TraceRow row;
      row.step = step;
      row.loss = loss;
      row.grad_norm = grad_norm;
      row.step_norm = step_norm;
      row.recon_norm = recon;
      row.bound_value = bound;
      row.bound_ok = step_norm <= bound * (1.0 + 1e-9);
      trace.rows.push_back(row);
    }
  }
  trace.final_loss = cfg.steps > 0 ? loss : 0.0;
  return {std::move(z), std::move(trace)};
}

BoundReport verify_trace(const OptimizationTrace& trace, double lipschitz, double eta) {
  require(!trace.rows.empty(), "verify_trace: empty trace");
  BoundReport report;
  report.steps = static_cast<int>(trace.rows.size());
  report.eta = eta;
  report.lipschitz = lipschitz;
  report.min_bound_slack = std::numeric_limits<double>::infinity();
  for (const TraceRow& row : trace.rows) {
    const double residual = std::fabs(row.step_norm - eta * row.grad_norm);
    const double rel = residual / std::max(row.step_norm, 1e-300);
    report.max_identity_residual = std::max(report.max_identity_residual, rel);
    if (rel > 1e-9) ++report.identity_violations;

    const double recon = std::sqrt(2.0 * row.loss);
    const double slack = eta * lipschitz * recon - row.step_norm;
    report.min_bound_slack = std::min(report.min_bound_slack, slack);
    if (slack < -1e-9) ++report.bound_violations;
  }
  return report;
}

std::pair<BitMessage, OptimizationTrace> extract_with_optimization(
    const GeneratorParams& params, const ImageTensor& x_recv, const OptimizerConfig& cfg) {
  const LatentTensor z_first = encode_image(params, x_recv);
  auto [z_refined, trace] = refine_latent(params, z_first, x_recv, cfg);
  const LatentTensor z_t = invert_denoise(params, z_refined);
  return {latent_to_bits(z_t), std::move(trace)};
}

}  // namespace stego
