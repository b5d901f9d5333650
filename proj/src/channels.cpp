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

#include "stego/channels.hpp"

#include <cmath>

namespace stego {
namespace {

// JPEG Annex K luminance quantization table.
constexpr int kBaseLuminance[64] = {
    16, 11, 10, 16, 24,  40,  51,  61,   //
    12, 12, 14, 19, 26,  58,  60,  55,   //
    14, 13, 16, 24, 40,  57,  69,  56,   //
    14, 17, 22, 29, 51,  87,  80,  62,   //
    18, 22, 37, 56, 68,  109, 103, 77,   //
    24, 35, 55, 64, 81,  104, 113, 92,   //
    49, 64, 78, 87, 103, 121, 120, 101,  //
    72, 92, 95, 98, 112, 100, 103, 99};

// Orthonormal DCT-II basis: kDct[k][n] = s_k * cos(pi*(2n+1)*k/16),
// s_0 = sqrt(1/8), s_k = 1/2. This matches the JPEG convention, where the
// 2D transform carries the (1/4)*C(u)*C(v) factor.
struct DctBasis {
  double m[8][8];
  DctBasis() {
    const double pi = 3.14159265358979323846264338327950288;
    for (int k = 0; k < 8; ++k) {
      const double s = k == 0 ? std::sqrt(1.0 / 8.0) : 0.5;
      for (int n = 0; n < 8; ++n) {
        m[k][n] = s * std::cos(pi * (2 * n + 1) * k / 16.0);
      }
    }
  }
};

const DctBasis& dct_basis() {
  static const DctBasis basis;
  return basis;
}

// block is 8x8 row-major. forward: F = B * f * B^T; inverse: f = B^T * F * B.
void dct2d(double block[64], bool forward) {
  const auto& b = dct_basis().m;
  double tmp[64];
  for (int k = 0; k < 8; ++k) {  // rows
    for (int n = 0; n < 8; ++n) {
      double acc = 0.0;
      for (int j = 0; j < 8; ++j) {
        acc += (forward ? b[k][j] : b[j][k]) * block[n * 8 + j];
      }
      tmp[n * 8 + k] = acc;
    }
  }
  for (int k = 0; k < 8; ++k) {  // columns
    for (int n = 0; n < 8; ++n) {
      double acc = 0.0;
      for (int j = 0; j < 8; ++j) {
        acc += (forward ? b[k][j] : b[j][k]) * tmp[j * 8 + n];
      }
      block[k * 8 + n] = acc;
    }
  }
}

double clamp01(double v) { return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v); }

ImageTensor bitdepth_quantize(const ImageTensor& x, int bits) {
  require(bits >= 1 && bits <= 16, "bitdepth channel: bits must be in [1,16]");
  const double levels = static_cast<double>((1 << bits) - 1);
  ImageTensor out = x;
  for (double& v : out.pixels) {
    v = clamp01(std::floor(clamp01(v) * levels + 0.5) / levels);
  }
  return out;
}

}  // namespace

std::string ChannelConfig::str() const {
  switch (kind) {
    case ChannelKind::kIdentity: return "identity";
    case ChannelKind::kFloat16: return "float16";
    case ChannelKind::kBitdepth: return "bitdepth:" + std::to_string(bits);
    case ChannelKind::kJpegLike: return "jpeg_like:" + std::to_string(quality);
  }
  return "unknown";
}

ChannelConfig ChannelConfig::parse(const std::string& s) {
  if (s == "identity") return identity();
  if (s == "float16") return float16();
  const auto colon = s.find(':');
  if (colon != std::string::npos) {
    const std::string head = s.substr(0, colon);
    int value = 0;
    try {
      value = std::stoi(s.substr(colon + 1));
    } catch (const std::exception&) {
      throw InvalidInput("channel config: bad number in '" + s + "'");
    }
    if (head == "bitdepth") {
      require(value >= 1 && value <= 16, "channel config: bits out of [1,16]");
      return bitdepth(value);
    }
    if (head == "jpeg_like") {
      require(value >= 1 && value <= 100, "channel config: quality out of [1,100]");
      return jpeg_like(value);
    }
  }
  throw InvalidInput("channel config: cannot parse '" + s + "'");
}

QuantTable quality_to_table(int quality) {
  require(quality >= 1 && quality <= 100, "quality_to_table: quality out of [1,100]");
  const int scale = quality < 50 ? 5000 / quality : 200 - 2 * quality;
  QuantTable t{};
  for (int i = 0; i < 64; ++i) {
    const int v = (kBaseLuminance[i] * scale + 50) / 100;
    t[i] = v < 1 ? 1 : v;
  }
  return t;
}

double float16_round(double x) {
  if (x == 0.0 || !std::isfinite(x)) return x;
  int exp2 = 0;
  std::frexp(std::fabs(x), &exp2);  // |x| = m * 2^exp2, m in [0.5,1)
  // Leading-bit exponent is exp2-1; half-precision normals reach down to
  // 2^-14, below that the grid is the subnormal step 2^-24.
  const double step = (exp2 - 1 < -14) ? 0x1.0p-24 : std::ldexp(1.0, exp2 - 11);
  return std::nearbyint(x / step) * step;
}

ImageTensor jpeg_like_transform(const ImageTensor& x, const QuantTable& table,
                                bool round_coefficients) {
  require(x.shape.height % 8 == 0 && x.shape.width % 8 == 0,
          "jpeg_like: image dimensions must be multiples of 8");
  for (int v : table) require(v >= 1, "jpeg_like: quant table entries must be >= 1");

  ImageTensor out = x;
  double block[64];
  for (int ch = 0; ch < x.shape.channels; ++ch) {
    for (int by = 0; by < x.shape.height; by += 8) {
      for (int bx = 0; bx < x.shape.width; bx += 8) {
        // Work in the 8-bit convention: values scaled to [0,255] and
        // level-shifted by 128 before the transform.
        for (int i = 0; i < 8; ++i) {
          for (int j = 0; j < 8; ++j) {
            block[i * 8 + j] = x.at(by + i, bx + j, ch) * 255.0 - 128.0;
          }
        }
        dct2d(block, /*forward=*/true);
        for (int i = 0; i < 64; ++i) {
          const double q = static_cast<double>(table[i]);
          if (round_coefficients) {
            block[i] = std::floor(block[i] / q + 0.5) * q;
          }
        }
        dct2d(block, /*forward=*/false);
        for (int i = 0; i < 8; ++i) {
          for (int j = 0; j < 8; ++j) {
            out.at(by + i, bx + j, ch) = clamp01((block[i * 8 + j] + 128.0) / 255.0);
          }
        }
      }
    }
  }
  return out;
}

ImageTensor apply_channel(const ChannelConfig& cfg, const ImageTensor& x) {
  switch (cfg.kind) {
    case ChannelKind::kIdentity:
      return x;
    case ChannelKind::kFloat16: {
      ImageTensor out = x;
      for (double& v : out.pixels) v = clamp01(float16_round(clamp01(v)));
      return out;
    }
    case ChannelKind::kBitdepth:
      return bitdepth_quantize(x, cfg.bits);
    case ChannelKind::kJpegLike:
      return jpeg_like_transform(x, quality_to_table(cfg.quality));
  }
  throw InvalidInput("apply_channel: unknown channel kind");
}

std::vector<ChannelConfig> channel_severity_order() {
  return {ChannelConfig::identity(),    ChannelConfig::float16(),
          ChannelConfig::bitdepth(8),   ChannelConfig::jpeg_like(90),
          ChannelConfig::jpeg_like(70), ChannelConfig::jpeg_like(50)};
}

}  // namespace stego
