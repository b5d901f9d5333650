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

#ifndef LATENTSTEGO_BENCH_HPP_
#define LATENTSTEGO_BENCH_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "stego/channels.hpp"
#include "stego/codec.hpp"
#include "stego/common.hpp"
#include "stego/generator.hpp"
#include "stego/optimizer.hpp"

namespace stego {

inline constexpr int kResultSchemaVersion = 1;

// Full factorial channel x steps x trials experiment. Messages and channel
// outputs are shared across step counts (and across channels) per trial, so
// every gain is a paired difference.
struct ExperimentSpec {
  std::uint64_t generator_seed = 7;
  Shape3 latent{4, 16, 16};
  ImageShape image{128, 128, 3};
  GeneratorOptions generator_options;
  std::vector<ChannelConfig> channels = channel_severity_order();
  std::vector<int> steps{0, 100};
  int trials = 100;
  SampleMode mode = SampleMode::kRandom;
  std::uint64_t master_seed = 1;
  OptimizerConfig optimizer;  // steps field is overridden per cell
  int threads = 0;            // 0 = hardware concurrency

  void validate() const;
};

struct CellResult {
  ChannelConfig channel;
  int steps = 0;
  int trials = 0;
  double mean_accuracy = 0.0;
  double std_accuracy = 0.0;
  double mean_gain = 0.0;  // vs. the steps=0 cell of the same channel
  std::vector<double> trial_accuracy;
};

struct ResultTable {
  int schema_version = kResultSchemaVersion;
  std::uint64_t optimizer_config_hash = 0;
  std::vector<CellResult> rows;  // channel-major, steps ascending

  const CellResult* find(const ChannelConfig& ch, int steps) const;
};

ResultTable run_bench(const ExperimentSpec& spec);

// Same experiment against a second, independently seeded generator; the
// optimizer configuration (and therefore its hash) is untouched.
ResultTable run_crossmodel(const ExperimentSpec& spec, std::uint64_t second_seed,
                           int second_hidden_width);

std::string result_table_csv(const ResultTable& table);
std::string result_table_json(const ResultTable& table, const ExperimentSpec& spec);

}  // namespace stego

#endif  // LATENTSTEGO_BENCH_HPP_
