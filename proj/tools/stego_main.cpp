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
// latentstego command line: embed messages into generated images, extract
// with optional latent refinement, apply channel degradations, and run the
// benchmark/ablation/cross-model experiments.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "stego/bench.hpp"
#include "stego/channels.hpp"
#include "stego/codec.hpp"
#include "stego/common.hpp"
#include "stego/generator.hpp"
#include "stego/io.hpp"
#include "stego/optimizer.hpp"
#include "stego/rng.hpp"
#include "stego/security.hpp"

namespace {

namespace fs = std::filesystem;
using namespace stego;

Shape3 parse_shape3(const std::string& s) {
  int c, h, w;
  if (std::sscanf(s.c_str(), "%d,%d,%d", &c, &h, &w) != 3) {
    throw InvalidInput("cannot parse latent shape '" + s + "' (want c,h,w)");
  }
  return Shape3{c, h, w};
}

ImageShape parse_image_shape(const std::string& s) {
  int h, w, c;
  if (std::sscanf(s.c_str(), "%d,%d,%d", &h, &w, &c) != 3) {
    throw InvalidInput("cannot parse image shape '" + s + "' (want H,W,C)");
  }
  return ImageShape{h, w, c};
}

void apply_eta_flag(OptimizerConfig& cfg, const std::string& eta) {
  if (eta == "auto") {
    cfg.eta_policy = EtaPolicy::kAuto;
    return;
  }
  std::string value = eta;
  if (eta.rfind("fixed:", 0) == 0) value = eta.substr(6);
  try {
    cfg.eta = std::stod(value);
  } catch (const std::exception&) {
    throw InvalidInput("cannot parse --eta '" + eta + "' (want auto or fixed:VALUE)");
  }
  cfg.eta_policy = EtaPolicy::kFixed;
}

std::vector<int> parse_steps_list(const std::string& s) {
  std::vector<int> steps;
  size_t pos = 0;
  while (pos < s.size()) {
    size_t next = s.find(',', pos);
    if (next == std::string::npos) next = s.size();
    try {
      steps.push_back(std::stoi(s.substr(pos, next - pos)));
    } catch (const std::exception&) {
      throw InvalidInput("cannot parse --steps list '" + s + "'");
    }
    pos = next + 1;
  }
  require(!steps.empty(), "--steps list is empty");
  return steps;
}

struct CommonFlags {
  std::uint64_t seed = 7;
  std::string latent_shape = "4,16,16";
  std::string image_shape = "128,128,3";
  std::string out_dir = "out";
  std::string mode = "random";
  std::string eta = "auto";
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--seed", flags.seed, "generator seed");
  cmd->add_option("--latent-shape", flags.latent_shape, "latent shape c,h,w");
  cmd->add_option("--image-shape", flags.image_shape, "image shape H,W,C");
  cmd->add_option("--out", flags.out_dir, "output directory");
}

void write_results(const fs::path& dir, const ResultTable& table,
                   const ExperimentSpec& spec) {
  fs::create_directories(dir);
  write_text_file((dir / "results.csv").string(), result_table_csv(table));
  write_text_file((dir / "results.json").string(), result_table_json(table, spec));
  std::cout << result_table_csv(table);
  std::cout << "wrote " << (dir / "results.csv").string() << "\n";
}

void dump_traces(const fs::path& dir, const ExperimentSpec& spec,
                 const GeneratorParams& params) {
  const fs::path trace_dir = dir / "traces";
  fs::create_directories(trace_dir);
  const size_t n = static_cast<size_t>(spec.latent.size());
  const BitMessage msg = random_message(n, mix_seed(spec.master_seed, 0xB17, 0));
  const StegoKey key{mix_seed(spec.master_seed, 0x5A11, 0)};
  const UniformVector s = bits_to_uniform(msg, key, spec.mode);
  const ImageTensor x = decode_image(params, denoise(params, uniform_to_latent(s, spec.latent)));
  for (const ChannelConfig& ch : spec.channels) {
    const ImageTensor received = apply_channel(ch, x);
    for (int steps : spec.steps) {
      if (steps == 0) continue;
      OptimizerConfig cfg = spec.optimizer;
      cfg.steps = steps;
      cfg.record_trace = true;
      auto [bits, trace] = extract_with_optimization(params, received, cfg);
      std::string name = ch.str();
      for (char& c : name) {
        if (c == ':') c = '_';
      }
      name += "_steps" + std::to_string(steps) + "_trial0.csv";
      write_trace_csv((trace_dir / name).string(), trace);
    }
  }
}

int cmd_embed(const CommonFlags& flags, const std::string& message_path,
              std::uint64_t key_seed, const std::string& fmt) {
  const Shape3 latent = parse_shape3(flags.latent_shape);
  const ImageShape image = parse_image_shape(flags.image_shape);
  const BitMessage msg = read_message_file(message_path);
  require(static_cast<int>(msg.size()) == latent.size(),
          "message is " + std::to_string(msg.size()) + " bits but the latent holds " +
              std::to_string(latent.size()));
  const SampleMode mode = parse_sample_mode(flags.mode);

  const GeneratorParams params = make_generator(flags.seed, latent, image);
  const UniformVector s = bits_to_uniform(msg, StegoKey{key_seed}, mode);
  const LatentTensor z_t = uniform_to_latent(s, latent);
  const ImageTensor x = decode_image(params, denoise(params, z_t));

  fs::create_directories(flags.out_dir);
  ImageMeta meta;
  meta.image = image;
  meta.latent = latent;
  meta.seed = flags.seed;
  meta.mode = flags.mode;
  fs::path img_path;
  if (fmt == "ppm") {
    img_path = fs::path(flags.out_dir) / "stego.ppm";
    write_image_ppm(img_path.string(), x);
  } else {
    img_path = fs::path(flags.out_dir) / "stego.raw";
    write_image_raw(img_path.string(), x, meta);
  }
  nlohmann::ordered_json sidecar{{"latent", {latent.c, latent.h, latent.w}},
                                 {"image", {image.height, image.width, image.channels}},
                                 {"seed", flags.seed},
                                 {"mode", flags.mode},
                                 {"bit_length", msg.size()}};
  write_text_file(img_path.string() + ".json", sidecar.dump(2) + "\n");
  std::cout << "wrote " << img_path.string() << "\n";
  return 0;
}

int cmd_extract(const CommonFlags& flags, const std::string& image_path, int steps) {
  std::optional<ImageMeta> meta;
  const ImageTensor x = read_image_any(image_path, &meta);

  Shape3 latent = parse_shape3(flags.latent_shape);
  std::uint64_t seed = flags.seed;
  if (meta.has_value() && meta->latent.size() > 0) latent = meta->latent;
  if (meta.has_value()) seed = meta->seed;

  const GeneratorParams params = make_generator(seed, latent, x.shape);
  OptimizerConfig cfg;
  cfg.steps = steps;
  apply_eta_flag(cfg, flags.eta);
  auto [bits, trace] = extract_with_optimization(params, x, cfg);

  fs::create_directories(flags.out_dir);
  const fs::path dir(flags.out_dir);
  write_message_file((dir / "message.bits").string(), bits);
  write_trace_csv((dir / "trace.csv").string(), trace);

  nlohmann::ordered_json report{{"steps", steps},
                                {"eta", trace.eta_used},
                                {"lipschitz", trace.lipschitz_used},
                                {"final_loss", trace.final_loss},
                                {"optimizer_config_hash", config_hash(cfg)}};
  if (!trace.rows.empty()) {
    const BoundReport br = verify_trace(trace, trace.lipschitz_used * 1.01, trace.eta_used);
    report["bound_check"] = {{"max_identity_residual", br.max_identity_residual},
                             {"min_bound_slack", br.min_bound_slack},
                             {"identity_violations", br.identity_violations},
                             {"bound_violations", br.bound_violations},
                             {"ok", br.ok()}};
  }
  write_text_file((dir / "report.json").string(), report.dump(2) + "\n");
  std::cout << "wrote " << (dir / "message.bits").string() << "\n";
  return 0;
}

int cmd_attack(const CommonFlags& flags, const std::string& image_path,
               const std::string& channel) {
  std::optional<ImageMeta> meta;
  const ImageTensor x = read_image_any(image_path, &meta);
  const ImageTensor y = apply_channel(ChannelConfig::parse(channel), x);
  fs::create_directories(flags.out_dir);
  const fs::path dir(flags.out_dir);
  if (meta.has_value()) {
    write_image_raw((dir / "attacked.raw").string(), y, *meta);
    std::cout << "wrote " << (dir / "attacked.raw").string() << "\n";
  } else {
    write_image_ppm((dir / "attacked.ppm").string(), y);
    std::cout << "wrote " << (dir / "attacked.ppm").string() << "\n";
  }
  return 0;
}

int run_experiment(const CommonFlags& flags, const std::vector<std::string>& channels,
                   const std::string& steps_list, int trials, std::uint64_t master_seed,
                   int threads, bool traces, bool crossmodel, std::uint64_t seed2,
                   int width2) {
  ExperimentSpec spec;
  spec.generator_seed = flags.seed;
  spec.latent = parse_shape3(flags.latent_shape);
  spec.image = parse_image_shape(flags.image_shape);
  spec.mode = parse_sample_mode(flags.mode);
  spec.master_seed = master_seed;
  spec.trials = trials;
  spec.threads = threads;
  spec.steps = parse_steps_list(steps_list);
  apply_eta_flag(spec.optimizer, flags.eta);
  if (!channels.empty()) {
    spec.channels.clear();
    for (const std::string& c : channels) spec.channels.push_back(ChannelConfig::parse(c));
  }

  const ResultTable table = crossmodel ? run_crossmodel(spec, seed2, width2)
                                       : run_bench(spec);
  write_results(flags.out_dir, table, spec);
  if (traces) {
    GeneratorOptions options = spec.generator_options;
    if (crossmodel) options.hidden_width = width2;
    const GeneratorParams params = make_generator(
        crossmodel ? seed2 : spec.generator_seed, spec.latent, spec.image, options);
    dump_traces(flags.out_dir, spec, params);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"latentstego: provably secure image steganography with receiver-side "
               "latent optimization"};
  app.require_subcommand(1);

  CommonFlags embed_flags, extract_flags, attack_flags, bench_flags, ablate_flags,
      cross_flags;

  // embed
  auto* embed = app.add_subcommand("embed", "embed a message file into a stego image");
  std::string message_path;
  std::uint64_t key_seed = 0;
  std::string embed_format = "raw";
  embed->add_option("--message", message_path, "message file (raw bits)")->required();
  embed->add_option("--key", key_seed, "sampling key for the within-interval draw");
  embed->add_option("--mode", embed_flags.mode, "random|midpoint");
  embed->add_option("--format", embed_format, "raw|ppm")
      ->check(CLI::IsMember({"raw", "ppm"}));
  add_common(embed, embed_flags);

  // extract
  auto* extract = app.add_subcommand("extract", "recover a message from an image");
  std::string image_path;
  int extract_steps = 100;
  extract->add_option("--image", image_path, "stego image (raw or ppm)")->required();
  extract->add_option("--steps", extract_steps, "optimization steps (0 = baseline)");
  extract->add_option("--eta", extract_flags.eta, "auto|fixed:VALUE");
  add_common(extract, extract_flags);

  // attack
  auto* attack = app.add_subcommand("attack", "apply a channel degradation to an image");
  std::string attack_image, attack_channel = "jpeg_like:70";
  attack->add_option("--image", attack_image, "input image")->required();
  attack->add_option("--channel", attack_channel,
                     "identity|float16|bitdepth:B|jpeg_like:Q");
  add_common(attack, attack_flags);

  // bench / ablate / crossmodel share flags
  std::vector<std::string> bench_channels;
  std::string bench_steps = "0,100";
  int bench_trials = 100, bench_threads = 0;
  std::uint64_t bench_master = 1;
  bool bench_traces = false;

  auto* bench = app.add_subcommand("bench", "channel sweep benchmark (paired trials)");
  auto* ablate = app.add_subcommand("ablate", "step-count ablation (bench preset)");
  auto* cross = app.add_subcommand("crossmodel",
                                   "run the optimizer against a second generator");
  std::string ablate_steps = "0,50,80,100,110";
  std::uint64_t cross_seed2 = 1007;
  int cross_width2 = 2;

  for (auto [cmd, flags] : {std::pair{bench, &bench_flags}, {ablate, &ablate_flags},
                            {cross, &cross_flags}}) {
    cmd->add_option("--channel", bench_channels, "channel (repeatable; default: all six)");
    cmd->add_option("--trials", bench_trials, "trials per cell");
    cmd->add_option("--master-seed", bench_master, "seed for messages and keys");
    cmd->add_option("--threads", bench_threads, "worker threads (0 = auto)");
    cmd->add_option("--mode", flags->mode, "random|midpoint");
    cmd->add_option("--eta", flags->eta, "auto|fixed:VALUE");
    cmd->add_flag("--traces", bench_traces, "write per-step traces for trial 0");
    add_common(cmd, *flags);
  }
  bench->add_option("--steps", bench_steps, "comma list of step counts");
  ablate->add_option("--steps", ablate_steps, "comma list of step counts");
  cross->add_option("--steps", bench_steps, "comma list of step counts");
  cross->add_option("--seed2", cross_seed2, "second generator seed");
  cross->add_option("--width2", cross_width2, "second generator hidden width");

  try {
    app.parse(argc, argv);
    if (embed->parsed()) return cmd_embed(embed_flags, message_path, key_seed, embed_format);
    if (extract->parsed()) return cmd_extract(extract_flags, image_path, extract_steps);
    if (attack->parsed()) return cmd_attack(attack_flags, attack_image, attack_channel);
    if (bench->parsed()) {
      return run_experiment(bench_flags, bench_channels, bench_steps, bench_trials,
                            bench_master, bench_threads, bench_traces, false, 0, 0);
    }
    if (ablate->parsed()) {
      return run_experiment(ablate_flags, bench_channels, ablate_steps, bench_trials,
                            bench_master, bench_threads, bench_traces, false, 0, 0);
    }
    if (cross->parsed()) {
      return run_experiment(cross_flags, bench_channels, bench_steps, bench_trials,
                            bench_master, bench_threads, bench_traces, true, cross_seed2,
                            cross_width2);
    }
    return 2;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const NumericFailure& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return 3;
  }
}
