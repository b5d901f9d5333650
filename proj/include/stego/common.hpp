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

#ifndef LATENTSTEGO_COMMON_HPP_
#define LATENTSTEGO_COMMON_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace stego {

// Bad arguments, malformed files, shape mismatches. CLI exit code 2.
struct InvalidInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Non-finite values, failed numeric procedures. CLI exit code 3.
struct NumericFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Latent shape (channels, height, width); flattened length = c*h*w.
struct Shape3 {
  int c = 0;
  int h = 0;
  int w = 0;

  int size() const { return c * h * w; }
  bool operator==(const Shape3&) const = default;
  std::string str() const {
    return std::to_string(c) + "," + std::to_string(h) + "," + std::to_string(w);
  }
};

// Image shape; pixels stored row-major as [y][x][channel].
struct ImageShape {
  int height = 0;
  int width = 0;
  int channels = 0;

  int size() const { return height * width * channels; }
  bool operator==(const ImageShape&) const = default;
  std::string str() const {
    return std::to_string(height) + "," + std::to_string(width) + "," +
           std::to_string(channels);
  }
};

// Flat real vector in latent space. Layout matches Shape3: [c][h][w].
struct LatentTensor {
  std::vector<double> values;
  Shape3 shape;

  static LatentTensor zeros(Shape3 s) {
    return LatentTensor{std::vector<double>(static_cast<size_t>(s.size()), 0.0), s};
  }
};

// Pixel array with values in [0,1] after decoding.
struct ImageTensor {
  std::vector<double> pixels;
  ImageShape shape;

  static ImageTensor zeros(ImageShape s) {
    return ImageTensor{std::vector<double>(static_cast<size_t>(s.size()), 0.0), s};
  }
  double& at(int y, int x, int ch) {
    return pixels[(static_cast<size_t>(y) * shape.width + x) * shape.channels + ch];
  }
  double at(int y, int x, int ch) const {
    return pixels[(static_cast<size_t>(y) * shape.width + x) * shape.channels + ch];
  }
};

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw InvalidInput(msg);
}

}  // namespace stego

#endif  // LATENTSTEGO_COMMON_HPP_
