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

#include "stego/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <vector>

#include <json.hpp>

namespace stego {
namespace {

using nlohmann::json;

std::vector<char> read_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), "cannot open file: " + path);
  std::vector<char> data((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());
  require(!in.bad(), "read failed: " + path);
  return data;
}

void write_bytes(const std::string& path, const char* data, size_t size) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  require(out.good(), "cannot open file for writing: " + path);
  out.write(data, static_cast<std::streamsize>(size));
  out.flush();
  require(out.good(), "write failed: " + path);
}

json parse_json(const std::string& text, const std::string& what) {
  json j = json::parse(text, nullptr, false);
  require(!j.is_discarded(), "malformed JSON in " + what);
  return j;
}

// float32 little-endian; this code assumes a little-endian host.
void put_f32(std::vector<char>& out, double v) {
  const float f = static_cast<float>(v);
  char b[4];
  std::memcpy(b, &f, 4);
  out.insert(out.end(), b, b + 4);
}

json meta_to_json(const ImageMeta& meta) {
  return json{{"version", meta.version},
              {"dtype", "f32le"},
              {"shape", {meta.image.height, meta.image.width, meta.image.channels}},
              {"latent", {meta.latent.c, meta.latent.h, meta.latent.w}},
              {"seed", meta.seed},
              {"mode", meta.mode}};
}

ImageMeta meta_from_json(const json& j) {
  ImageMeta meta;
  require(j.contains("shape") && j["shape"].size() == 3, "image header: bad shape");
  meta.image = ImageShape{j["shape"][0].get<int>(), j["shape"][1].get<int>(),
                          j["shape"][2].get<int>()};
  if (j.contains("latent") && j["latent"].size() == 3) {
    meta.latent = Shape3{j["latent"][0].get<int>(), j["latent"][1].get<int>(),
                         j["latent"][2].get<int>()};
  }
  if (j.contains("seed")) meta.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("mode")) meta.mode = j["mode"].get<std::string>();
  if (j.contains("version")) meta.version = j["version"].get<int>();
  return meta;
}

}  // namespace

void write_message_file(const std::string& path, const BitMessage& msg) {
  require(!msg.bits.empty(), "write_message_file: empty message");
  std::vector<char> bytes((msg.bits.size() + 7) / 8, 0);
  for (size_t i = 0; i < msg.bits.size(); ++i) {
    require(msg.bits[i] <= 1, "write_message_file: message element not 0/1");
    if (msg.bits[i]) bytes[i / 8] |= static_cast<char>(0x80u >> (i % 8));
  }
  write_bytes(path, bytes.data(), bytes.size());
  const json sidecar{{"bit_length", msg.bits.size()}};
  write_text_file(path + ".json", sidecar.dump() + "\n");
}

BitMessage read_message_file(const std::string& path) {
  const auto bytes = read_bytes(path);
  size_t bit_length = bytes.size() * 8;
  std::ifstream side(path + ".json");
  if (side.good()) {
    std::string text((std::istreambuf_iterator<char>(side)),
                     std::istreambuf_iterator<char>());
    const json j = parse_json(text, path + ".json");
    require(j.contains("bit_length"), "message sidecar missing bit_length");
    bit_length = j["bit_length"].get<size_t>();
  }
  require(bit_length >= 1, "read_message_file: empty message");
  require(bit_length <= bytes.size() * 8,
          "read_message_file: sidecar bit_length exceeds file size");
  BitMessage msg;
  msg.bits.reserve(bit_length);
  for (size_t i = 0; i < bit_length; ++i) {
    const auto byte = static_cast<unsigned char>(bytes[i / 8]);
    msg.bits.push_back((byte >> (7 - i % 8)) & 1u);
  }
  return msg;
}

void write_image_raw(const std::string& path, const ImageTensor& x, const ImageMeta& meta) {
  require(x.shape == meta.image, "write_image_raw: metadata shape mismatch");
  std::vector<char> out;
  const std::string header = meta_to_json(meta).dump() + "\n";
  out.insert(out.end(), header.begin(), header.end());
  out.reserve(out.size() + x.pixels.size() * 4);
  for (double v : x.pixels) put_f32(out, v);
  write_bytes(path, out.data(), out.size());
}

ImageTensor read_image_raw(const std::string& path, ImageMeta* meta_out) {
  const auto data = read_bytes(path);
  const auto newline = std::find(data.begin(), data.end(), '\n');
  require(newline != data.end(), "image raw: missing header line in " + path);
  const std::string header(data.begin(), newline);
  const ImageMeta meta = meta_from_json(parse_json(header, path));
  const size_t payload_offset = static_cast<size_t>(newline - data.begin()) + 1;
  const size_t expected = static_cast<size_t>(meta.image.size()) * 4;
  require(data.size() - payload_offset == expected,
          "image raw: truncated or oversize payload in " + path);

  ImageTensor x = ImageTensor::zeros(meta.image);
  for (int i = 0; i < meta.image.size(); ++i) {
    float f;
    std::memcpy(&f, data.data() + payload_offset + static_cast<size_t>(i) * 4, 4);
    require(!std::isnan(f), "image raw: NaN pixel in " + path);
    x.pixels[i] = std::clamp(static_cast<double>(f), 0.0, 1.0);
  }
  if (meta_out != nullptr) *meta_out = meta;
  return x;
}

void write_image_ppm(const std::string& path, const ImageTensor& x) {
  require(x.shape.channels == 3, "write_image_ppm: PPM requires 3 channels");
  char header[64];
  std::snprintf(header, sizeof(header), "P6\n%d %d\n255\n", x.shape.width, x.shape.height);
  std::vector<char> out(header, header + std::strlen(header));
  out.reserve(out.size() + x.pixels.size());
  for (double v : x.pixels) {
    const double q = std::floor(std::clamp(v, 0.0, 1.0) * 255.0 + 0.5);
    out.push_back(static_cast<char>(static_cast<unsigned char>(q)));
  }
  write_bytes(path, out.data(), out.size());
}

ImageTensor read_image_ppm(const std::string& path) {
  const auto data = read_bytes(path);
  // Minimal P6 parser: magic, width, height, maxval, single whitespace, pixels.
  size_t pos = 0;
  auto skip_space = [&] {
    while (pos < data.size()) {
      const char c = data[pos];
      if (c == ' ' || c == '\n' || c == '\t' || c == '\r') {
        ++pos;
      } else if (c == '#') {  // comment line
        while (pos < data.size() && data[pos] != '\n') ++pos;
      } else {
        break;
      }
    }
  };
  auto read_int = [&]() -> int {
    skip_space();
    int v = 0;
    bool any = false;
    while (pos < data.size() && data[pos] >= '0' && data[pos] <= '9') {
      v = v * 10 + (data[pos] - '0');
      ++pos;
      any = true;
    }
    require(any, "ppm: malformed header in " + path);
    return v;
  };
  require(data.size() >= 2 && data[0] == 'P' && data[1] == '6', "ppm: not a P6 file: " + path);
  pos = 2;
  const int width = read_int();
  const int height = read_int();
  const int maxval = read_int();
  require(maxval == 255, "ppm: only maxval 255 is supported");
  ++pos;  // single whitespace after maxval
  const size_t expected = static_cast<size_t>(width) * height * 3;
  require(data.size() - pos == expected, "ppm: truncated payload in " + path);
  ImageTensor x = ImageTensor::zeros(ImageShape{height, width, 3});
  for (size_t i = 0; i < expected; ++i) {
    x.pixels[i] = static_cast<double>(static_cast<unsigned char>(data[pos + i])) / 255.0;
  }
  return x;
}

ImageTensor read_image_any(const std::string& path, std::optional<ImageMeta>* meta_out) {
  const auto data = read_bytes(path);
  if (meta_out != nullptr) meta_out->reset();
  if (data.size() >= 2 && data[0] == 'P' && data[1] == '6') return read_image_ppm(path);
  ImageMeta meta;
  ImageTensor x = read_image_raw(path, &meta);
  if (meta_out != nullptr) *meta_out = meta;
  return x;
}

void write_trace_csv(const std::string& path, const OptimizationTrace& trace) {
  std::string out = "step,loss,grad_norm,step_norm,bound_value,bound_ok\n";
  char line[256];
  for (const TraceRow& row : trace.rows) {
    std::snprintf(line, sizeof(line), "%d,%.17g,%.17g,%.17g,%.17g,%d\n", row.step,
                  row.loss, row.grad_norm, row.step_norm, row.bound_value,
                  row.bound_ok ? 1 : 0);
    out += line;
  }
  write_text_file(path, out);
}

void write_text_file(const std::string& path, const std::string& content) {
  write_bytes(path, content.data(), content.size());
}

std::string read_text_file(const std::string& path) {
  const auto data = read_bytes(path);
  return std::string(data.begin(), data.end());
}

}  // namespace stego
