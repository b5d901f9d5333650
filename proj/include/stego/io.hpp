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

#ifndef LATENTSTEGO_IO_HPP_
#define LATENTSTEGO_IO_HPP_

#include <cstdint>
#include <optional>
#include <string>

#include "stego/codec.hpp"
#include "stego/common.hpp"
#include "stego/optimizer.hpp"

namespace stego {

// Messages travel as raw bytes, MSB first, the last byte zero-padded; the
// true bit length lives in a JSON sidecar next to the file.
void write_message_file(const std::string& path, const BitMessage& msg);
BitMessage read_message_file(const std::string& path);

// Metadata carried by the float-raw image container and the embed sidecar.
struct ImageMeta {
  ImageShape image;
  Shape3 latent;
  std::uint64_t seed = 0;
  std::string mode = "random";
  int version = 1;
};

// Lossless float container: one JSON header line followed by row-major
// little-endian float32 samples.
void write_image_raw(const std::string& path, const ImageTensor& x, const ImageMeta& meta);
ImageTensor read_image_raw(const std::string& path, ImageMeta* meta_out = nullptr);

// 8-bit binary PPM (P6) interchange; quantizes on write.
void write_image_ppm(const std::string& path, const ImageTensor& x);
ImageTensor read_image_ppm(const std::string& path);

// Reads either container, keyed on the file's leading bytes.
ImageTensor read_image_any(const std::string& path, std::optional<ImageMeta>* meta_out);

void write_trace_csv(const std::string& path, const OptimizationTrace& trace);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace stego

#endif  // LATENTSTEGO_IO_HPP_
