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

#ifndef LATENTSTEGO_RNG_HPP_
#define LATENTSTEGO_RNG_HPP_

#include <cmath>
#include <cstdint>

namespace stego {

// Self-contained 64-bit generator (splitmix64). Used everywhere instead of
// std::*_distribution so that streams are bit-identical across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Strictly inside (0,1); never returns an exact 0, 0.5 or 1.
  double next_unit() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller, caching the second draw.
  double next_gauss() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = next_unit();
    const double u2 = next_unit();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

  bool next_bit() { return (next_u64() >> 63) != 0; }

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// Derives an independent stream seed from a base seed and salts.
inline std::uint64_t mix_seed(std::uint64_t base, std::uint64_t salt_a,
                              std::uint64_t salt_b = 0) {
  Rng r(base ^ (salt_a * 0xD1342543DE82EF95ull) ^ (salt_b * 0xAF251AF3B0F025B5ull));
  r.next_u64();
  return r.next_u64();
}

}  // namespace stego

#endif  // LATENTSTEGO_RNG_HPP_
