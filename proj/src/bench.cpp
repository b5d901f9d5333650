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

#include "stego/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <thread>

#include <json.hpp>

#include "stego/rng.hpp"

namespace stego {
namespace {

// Runs fn(trial) for every trial index on a small thread pool. Work items are
// independent; results must be written into per-trial slots so the reduction
// order never depends on scheduling.
void parallel_trials(int trials, int threads, const std::function<void(int)>& fn) {
  if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
  threads = std::max(1, std::min(threads, trials));
  if (threads == 1) {
    for (int t = 0; t < trials; ++t) fn(t);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (int t = next.fetch_add(1); t < trials; t = next.fetch_add(1)) fn(t);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

struct CellStats {
  double mean = 0.0;
  double stddev = 0.0;
};

CellStats summarize(const std::vector<double>& values) {
  CellStats s;
  const double n = static_cast<double>(values.size());
  for (double v : values) s.mean += v;
  s.mean /= n;
  if (values.size() > 1) {
    double acc = 0.0;
    for (double v : values) acc += (v - s.mean) * (v - s.mean);
    s.stddev = std::sqrt(acc / (n - 1.0));
  }
  return s;
}

ResultTable run_with_params(const ExperimentSpec& spec, const GeneratorParams& params) {
  const int n_channels = static_cast<int>(spec.channels.size());
  const int n_steps = static_cast<int>(spec.steps.size());
  const size_t n = static_cast<size_t>(spec.latent.size());

  // accuracy[trial][channel][step_idx]
  std::vector<double> accuracy(static_cast<size_t>(spec.trials) * n_channels * n_steps);
  auto slot = [&](int t, int ch, int si) -> double& {
    return accuracy[(static_cast<size_t>(t) * n_channels + ch) * n_steps + si];
  };

  parallel_trials(spec.trials, spec.threads, [&](int t) {
    const BitMessage msg = random_message(n, mix_seed(spec.master_seed, 0xB17, t));
    const StegoKey key{mix_seed(spec.master_seed, 0x5A11, t)};
    const UniformVector s = bits_to_uniform(msg, key, spec.mode);
    const LatentTensor z_t = uniform_to_latent(s, spec.latent);
    const LatentTensor z0 = denoise(params, z_t);
    const ImageTensor stego_image = decode_image(params, z0);
    for (int ch = 0; ch < n_channels; ++ch) {
      const ImageTensor received = apply_channel(spec.channels[ch], stego_image);
      for (int si = 0; si < n_steps; ++si) {
        OptimizerConfig cfg = spec.optimizer;
        cfg.steps = spec.steps[si];
        cfg.record_trace = false;
        auto [bits, trace] = extract_with_optimization(params, received, cfg);
        slot(t, ch, si) = bit_accuracy(msg, bits);
      }
    }
  });

  ResultTable table;
  table.optimizer_config_hash = config_hash(spec.optimizer);

  // Index of the steps=0 cell, if present, for the paired-gain column.
  int base_idx = -1;
  for (int si = 0; si < n_steps; ++si) {
    if (spec.steps[si] == 0) base_idx = si;
  }

  for (int ch = 0; ch < n_channels; ++ch) {
    for (int si = 0; si < n_steps; ++si) {
      CellResult cell;
      cell.channel = spec.channels[ch];
      cell.steps = spec.steps[si];
      cell.trials = spec.trials;
      cell.trial_accuracy.resize(spec.trials);
      double gain_sum = 0.0;
      for (int t = 0; t < spec.trials; ++t) {
        cell.trial_accuracy[t] = slot(t, ch, si);
        if (base_idx >= 0) gain_sum += slot(t, ch, si) - slot(t, ch, base_idx);
      }
      const CellStats stats = summarize(cell.trial_accuracy);
      cell.mean_accuracy = stats.mean;
      cell.std_accuracy = stats.stddev;
      cell.mean_gain = base_idx >= 0 ? gain_sum / spec.trials : 0.0;
      table.rows.push_back(std::move(cell));
    }
  }
  return table;
}

}  // namespace

void ExperimentSpec::validate() const {
  require(trials >= 1, "experiment spec: trials must be >= 1");
  require(!channels.empty(), "experiment spec: need at least one channel");
  require(!steps.empty(), "experiment spec: need at least one step count");
  for (int s : steps) require(s >= 0, "experiment spec: negative step count");
}

const CellResult* ResultTable::find(const ChannelConfig& ch, int steps) const {
  for (const CellResult& row : rows) {
    if (row.channel.str() == ch.str() && row.steps == steps) return &row;
  }
  return nullptr;
}

ResultTable run_bench(const ExperimentSpec& spec) {
  spec.validate();
  const GeneratorParams params =
      make_generator(spec.generator_seed, spec.latent, spec.image, spec.generator_options);
  return run_with_params(spec, params);
}

ResultTable run_crossmodel(const ExperimentSpec& spec, std::uint64_t second_seed,
                           int second_hidden_width) {
  spec.validate();
  GeneratorOptions options = spec.generator_options;
  options.hidden_width = second_hidden_width;
  const GeneratorParams params =
      make_generator(second_seed, spec.latent, spec.image, options);
  return run_with_params(spec, params);
}

std::string result_table_csv(const ResultTable& table) {
  std::string out =
      "schema_version,channel,steps,trials,mean_accuracy,std_accuracy,mean_gain,"
      "mean_gain_pct\n";
  char line[320];
  for (const CellResult& row : table.rows) {
    std::snprintf(line, sizeof(line), "%d,%s,%d,%d,%.10f,%.10f,%.10f,%.6f\n",
                  table.schema_version, row.channel.str().c_str(), row.steps, row.trials,
                  row.mean_accuracy, row.std_accuracy, row.mean_gain,
                  100.0 * row.mean_gain);
    out += line;
  }
  return out;
}

std::string result_table_json(const ResultTable& table, const ExperimentSpec& spec) {
  nlohmann::ordered_json j;
  j["schema_version"] = table.schema_version;
  j["optimizer_config_hash"] = table.optimizer_config_hash;
  j["spec"] = {{"generator_seed", spec.generator_seed},
               {"latent", {spec.latent.c, spec.latent.h, spec.latent.w}},
               {"image", {spec.image.height, spec.image.width, spec.image.channels}},
               {"trials", spec.trials},
               {"mode", to_string(spec.mode)},
               {"master_seed", spec.master_seed},
               {"eta_policy", to_string(spec.optimizer.eta_policy)},
               {"eta", spec.optimizer.eta},
               {"hidden_width", spec.generator_options.hidden_width}};
  j["rows"] = nlohmann::ordered_json::array();
  for (const CellResult& row : table.rows) {
    nlohmann::ordered_json r;
    r["channel"] = row.channel.str();
    r["steps"] = row.steps;
    r["trials"] = row.trials;
    r["mean_accuracy"] = row.mean_accuracy;
    r["std_accuracy"] = row.std_accuracy;
    r["mean_gain"] = row.mean_gain;
    r["mean_gain_pct"] = 100.0 * row.mean_gain;
    r["trial_accuracy"] = row.trial_accuracy;
    j["rows"].push_back(std::move(r));
  }
  return j.dump(2) + "\n";
}

}  // namespace stego
