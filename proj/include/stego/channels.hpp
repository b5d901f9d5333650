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

#ifndef LATENTSTEGO_CHANNELS_HPP_
#define LATENTSTEGO_CHANNELS_HPP_

#include <array>
#include <string>
#include <vector>

#include "stego/common.hpp"

namespace stego {

enum class ChannelKind {
  kIdentity,   // exact pass-through (lossless float container)
  kFloat16,    // round every pixel to the nearest half-precision value
  kBitdepth,   // uniform quantization to 2^bits levels
  kJpegLike,   // 8x8 block DCT + quality-scaled quantization
};

struct ChannelConfig {
  ChannelKind kind = ChannelKind::kIdentity;
  int bits = 8;      // kBitdepth only, 1..16
  int quality = 90;  // kJpegLike only, 1..100

  // Textual form used in CSV/JSON outputs: "identity", "float16",
  // "bitdepth:8", "jpeg_like:70".
  std::string str() const;
  static ChannelConfig parse(const std::string& s);

  static ChannelConfig identity() { return {ChannelKind::kIdentity, 0, 0}; }
  static ChannelConfig float16() { return {ChannelKind::kFloat16, 0, 0}; }
  static ChannelConfig bitdepth(int b) { return {ChannelKind::kBitdepth, b, 0}; }
  static ChannelConfig jpeg_like(int q) { return {ChannelKind::kJpegLike, 0, q}; }
};

// 8x8 quantization matrix in row-major order, all entries >= 1.
using QuantTable = std::array<int, 64>;

// Standard luminance base table scaled by the conventional quality formula:
// s = (q < 50 ? 5000/q : 200 - 2q)/100, entries floored at 1.
QuantTable quality_to_table(int quality);

// Applies the configured degradation. Pure and deterministic; output is
// clamped to [0,1].
ImageTensor apply_channel(const ChannelConfig& cfg, const ImageTensor& x);

// Per-channel 8x8 block DCT quantization round trip. Requires height and
// width to be multiples of 8. `round_coefficients` exists as a test hook:
// with rounding off and an all-ones table the transform is the identity.
ImageTensor jpeg_like_transform(const ImageTensor& x, const QuantTable& table,
                                bool round_coefficients = true);

// Nearest half-precision neighbour of x (round-to-nearest-even).
double float16_round(double x);

// The six transmission scenarios in decreasing fidelity: identity,
// float16, bitdepth(8), jpeg_like(90), jpeg_like(70), jpeg_like(50).
std::vector<ChannelConfig> channel_severity_order();

}  // namespace stego

#endif  // LATENTSTEGO_CHANNELS_HPP_
