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

#include "stego/generator.hpp"

#include <cmath>
#include <cstring>

#include "stego/rng.hpp"

namespace stego {
namespace {

constexpr int kMaxLatentChannels = 64;
constexpr int kMaxHidden = 16;
constexpr int kMaxImageChannels = 16;
constexpr double kUnsquashClamp = 1e-6;  // pixel clamp before the logit
constexpr double kTanhClamp = 1.0 - 1e-6;  // hidden clamp before atanh

double dot(const double* a, const double* b, int n) {
  double acc = 0.0;
  for (int i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

double norm2(const std::vector<double>& v) {
  double acc = 0.0;
  for (double x : v) acc += x * x;
  return std::sqrt(acc);
}

// Orthonormalizes the rows of a row-major matrix in place (classical
// Gram-Schmidt with one reorthogonalization pass).
void orthonormalize_rows(std::vector<double>& m, int rows, int cols) {
  for (int r = 0; r < rows; ++r) {
    double* row = &m[static_cast<size_t>(r) * cols];
    for (int pass = 0; pass < 2; ++pass) {
      for (int i = 0; i < r; ++i) {
        const double* prev = &m[static_cast<size_t>(i) * cols];
        const double proj = dot(row, prev, cols);
        for (int j = 0; j < cols; ++j) row[j] -= proj * prev[j];
      }
    }
    const double nrm = std::sqrt(dot(row, row, cols));
    if (nrm < 1e-12) throw NumericFailure("orthonormalize: rank-deficient draw");
    for (int j = 0; j < cols; ++j) row[j] /= nrm;
  }
}

// Same for columns; used for the tall stacked layer matrices.
void orthonormalize_columns(std::vector<double>& m, int rows, int cols) {
  std::vector<double> t(static_cast<size_t>(rows) * cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) t[static_cast<size_t>(c) * rows + r] = m[static_cast<size_t>(r) * cols + c];
  }
  orthonormalize_rows(t, cols, rows);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) m[static_cast<size_t>(r) * cols + c] = t[static_cast<size_t>(c) * rows + r];
  }
}

// Gauss-Jordan inverse with partial pivoting, for the small caches.
std::vector<double> invert_dense(std::vector<double> a, int n) {
  std::vector<double> inv(static_cast<size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) inv[static_cast<size_t>(i) * n + i] = 1.0;
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int r = col + 1; r < n; ++r) {
      if (std::fabs(a[static_cast<size_t>(r) * n + col]) >
          std::fabs(a[static_cast<size_t>(pivot) * n + col])) {
        pivot = r;
      }
    }
    if (std::fabs(a[static_cast<size_t>(pivot) * n + col]) < 1e-14) {
      throw NumericFailure("invert_dense: singular matrix");
    }
    for (int j = 0; j < n; ++j) {
      std::swap(a[static_cast<size_t>(col) * n + j], a[static_cast<size_t>(pivot) * n + j]);
      std::swap(inv[static_cast<size_t>(col) * n + j], inv[static_cast<size_t>(pivot) * n + j]);
    }
    const double d = a[static_cast<size_t>(col) * n + col];
    for (int j = 0; j < n; ++j) {
      a[static_cast<size_t>(col) * n + j] /= d;
      inv[static_cast<size_t>(col) * n + j] /= d;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = a[static_cast<size_t>(r) * n + col];
      if (f == 0.0) continue;
      for (int j = 0; j < n; ++j) {
        a[static_cast<size_t>(r) * n + j] -= f * a[static_cast<size_t>(col) * n + j];
        inv[static_cast<size_t>(r) * n + j] -= f * inv[static_cast<size_t>(col) * n + j];
      }
    }
  }
  return inv;
}

// Top singular value of a small row-major matrix, by power iteration on
// M^T M from a fixed start vector.
double spectral_norm_dense(const std::vector<double>& m, int rows, int cols) {
  std::vector<double> v(cols, 1.0 / std::sqrt(static_cast<double>(cols)));
  std::vector<double> mv(rows), mtmv(cols);
  double sigma = 0.0;
  for (int it = 0; it < 2000; ++it) {
    for (int r = 0; r < rows; ++r) mv[r] = dot(&m[static_cast<size_t>(r) * cols], v.data(), cols);
    double s = 0.0;
    for (double x : mv) s += x * x;
    s = std::sqrt(s);
    for (int c = 0; c < cols; ++c) {
      double acc = 0.0;
      for (int r = 0; r < rows; ++r) acc += m[static_cast<size_t>(r) * cols + c] * mv[r];
      mtmv[c] = acc;
    }
    double nrm = 0.0;
    for (double x : mtmv) nrm += x * x;
    nrm = std::sqrt(nrm);
    if (nrm == 0.0) return 0.0;
    for (int c = 0; c < cols; ++c) v[c] = mtmv[c] / nrm;
    if (it > 2 && std::fabs(s - sigma) <= 1e-13 * s) return s;
    sigma = s;
  }
  return sigma;
}

double sigmoid(double t) { return 1.0 / (1.0 + std::exp(-t)); }

double clamp(double v, double lo, double hi) {
  return v < lo ? lo : (v > hi ? hi : v);
}

void check_latent(const GeneratorParams& p, const LatentTensor& z, const char* op) {
  require(z.shape == p.latent, std::string(op) + ": latent shape " + z.shape.str() +
                                   " does not match generator " + p.latent.str());
  require(static_cast<int>(z.values.size()) == p.latent.size(),
          std::string(op) + ": latent buffer size mismatch");
}

void check_image(const GeneratorParams& p, const ImageTensor& x, const char* op) {
  require(x.shape == p.image, std::string(op) + ": image shape " + x.shape.str() +
                                  " does not match generator " + p.image.str());
  require(static_cast<int>(x.pixels.size()) == p.image.size(),
          std::string(op) + ": image buffer size mismatch");
}

// Shared site loop for the decoder-side passes. Mode selects which pass runs:
// all of them need the same forward quantities.
enum class Pass { kDecode, kLossGrad, kJvp, kVjp };

struct PassBuffers {
  const LatentTensor* z = nullptr;
  const ImageTensor* x_ref = nullptr;   // kLossGrad
  const LatentTensor* v_in = nullptr;   // kJvp
  const ImageTensor* w_in = nullptr;    // kVjp
  ImageTensor* image_out = nullptr;     // kDecode, kJvp
  LatentTensor* latent_out = nullptr;   // kLossGrad, kVjp
  double loss = 0.0;
};

void run_decoder_pass(const GeneratorParams& p, Pass pass, PassBuffers& buf) {
  const int c = p.latent.c, lh = p.latent.h, lw = p.latent.w;
  const int k = p.upsample, m = p.options.hidden_width, ch_n = p.image.channels;
  const int phases = k * k;
  const int site_stride = lh * lw;
  const bool linear = p.options.linear_hook;
  const double alpha = p.options.alpha;

  double u[kMaxLatentChannels], du[kMaxLatentChannels];
  double hid[kMaxHidden], dh[kMaxHidden];
  double px[kMaxImageChannels], dt[kMaxImageChannels];

  for (int sy = 0; sy < lh; ++sy) {
    for (int sx = 0; sx < lw; ++sx) {
      const int site = sy * lw + sx;
      for (int ci = 0; ci < c; ++ci) {
        u[ci] = buf.z->values[static_cast<size_t>(ci) * site_stride + site];
        if (pass == Pass::kJvp) {
          du[ci] = buf.v_in->values[static_cast<size_t>(ci) * site_stride + site];
        }
        if (pass == Pass::kLossGrad || pass == Pass::kVjp) du[ci] = 0.0;
      }
      for (int ph = 0; ph < phases; ++ph) {
        const double* w1_block = &p.w1[static_cast<size_t>(ph) * m * c];
        const double* w2_block = &p.w2[static_cast<size_t>(ph) * ch_n * m];
        for (int j = 0; j < m; ++j) {
          const double pre = dot(&w1_block[static_cast<size_t>(j) * c], u, c) +
                             p.c1[static_cast<size_t>(ph) * m + j];
          hid[j] = linear ? pre : std::tanh(alpha * pre);
        }
        const int iy = sy * k + ph / k;
        const int ix = sx * k + ph % k;
        const size_t pix_base =
            (static_cast<size_t>(iy) * p.image.width + ix) * ch_n;
        for (int ci = 0; ci < ch_n; ++ci) {
          const double tt = dot(&w2_block[static_cast<size_t>(ci) * m], hid, m);
          px[ci] = linear ? tt : sigmoid(tt);
        }
        switch (pass) {
          case Pass::kDecode:
            for (int ci = 0; ci < ch_n; ++ci) buf.image_out->pixels[pix_base + ci] = px[ci];
            break;
          case Pass::kJvp: {
            // Forward-mode: da = W1*du, dh = phi'*da, dt = W2*dh, dx = sig'*dt.
            for (int j = 0; j < m; ++j) {
              const double da = dot(&w1_block[static_cast<size_t>(j) * c], du, c);
              dh[j] = linear ? da : alpha * (1.0 - hid[j] * hid[j]) * da;
            }
            for (int ci = 0; ci < ch_n; ++ci) {
              const double dtt = dot(&w2_block[static_cast<size_t>(ci) * m], dh, m);
              buf.image_out->pixels[pix_base + ci] =
                  linear ? dtt : px[ci] * (1.0 - px[ci]) * dtt;
            }
            break;
          }
          case Pass::kLossGrad:
          case Pass::kVjp: {
            // Reverse-mode from the pixel cotangent.
            for (int ci = 0; ci < ch_n; ++ci) {
              double cot;
              if (pass == Pass::kLossGrad) {
                const double r = px[ci] - buf.x_ref->pixels[pix_base + ci];
                buf.loss += 0.5 * r * r;
                cot = r;
              } else {
                cot = buf.w_in->pixels[pix_base + ci];
              }
              dt[ci] = linear ? cot : px[ci] * (1.0 - px[ci]) * cot;
            }
            for (int j = 0; j < m; ++j) {
              double acc = 0.0;
              for (int ci = 0; ci < ch_n; ++ci) {
                acc += w2_block[static_cast<size_t>(ci) * m + j] * dt[ci];
              }
              dh[j] = linear ? acc : alpha * (1.0 - hid[j] * hid[j]) * acc;
            }
            for (int ci = 0; ci < c; ++ci) {
              double acc = 0.0;
              for (int j = 0; j < m; ++j) {
                acc += w1_block[static_cast<size_t>(j) * c + ci] * dh[j];
              }
              du[ci] += acc;
            }
            break;
          }
        }
      }
      if (pass == Pass::kLossGrad || pass == Pass::kVjp) {
        for (int ci = 0; ci < c; ++ci) {
          buf.latent_out->values[static_cast<size_t>(ci) * site_stride + site] = du[ci];
        }
      }
    }
  }
}

}  // namespace

GeneratorParams make_generator(std::uint64_t seed, Shape3 latent_shape,
                               ImageShape image_shape, const GeneratorOptions& options) {
  require(latent_shape.c >= 1 && latent_shape.h >= 1 && latent_shape.w >= 1,
          "make_generator: latent dimensions must be positive");
  require(image_shape.height >= 1 && image_shape.width >= 1 && image_shape.channels >= 1,
          "make_generator: image dimensions must be positive");
  require(image_shape.height % latent_shape.h == 0 &&
              image_shape.width % latent_shape.w == 0,
          "make_generator: image size must be an integer multiple of latent size");
  const int k = image_shape.height / latent_shape.h;
  require(image_shape.width / latent_shape.w == k,
          "make_generator: horizontal and vertical upsampling factors differ");
  require(latent_shape.c <= kMaxLatentChannels, "make_generator: too many latent channels");
  require(image_shape.channels <= kMaxImageChannels, "make_generator: too many image channels");
  const int m = options.hidden_width;
  require(m >= 1 && m <= kMaxHidden, "make_generator: hidden width out of range");
  require(m <= image_shape.channels,
          "make_generator: hidden width must not exceed image channels");
  require(k * k * m >= latent_shape.c,
          "make_generator: upsampling budget too small for the latent channels");
  require(options.alpha > 0.0 && options.input_gain > 0.0 && options.output_gain > 0.0,
          "make_generator: gains must be positive");

  GeneratorParams p;
  p.seed = seed;
  p.latent = latent_shape;
  p.image = image_shape;
  p.upsample = k;
  p.options = options;

  const int n = latent_shape.size();
  const int phases = k * k;
  const int ch_n = image_shape.channels;

  // Denoiser: random orthogonal mixing matrix plus a small bias.
  {
    Rng rng(mix_seed(seed, 0xA1));
    p.q.resize(static_cast<size_t>(n) * n);
    for (double& v : p.q) v = rng.next_gauss();
    orthonormalize_rows(p.q, n, n);
  }
  {
    Rng rng(mix_seed(seed, 0xA2));
    p.bias.resize(n);
    for (double& v : p.bias) v = rng.next_gauss() * options.latent_bias_scale;
  }

  // Layer 1: stacked phase weights with orthogonal columns. The scaling keeps
  // per-row norms near input_gain and makes W1^T W1 a scalar matrix, so the
  // encoder's pooled pseudo-inverse is exact.
  {
    Rng rng(mix_seed(seed, 0xA3));
    p.w1.resize(static_cast<size_t>(phases) * m * latent_shape.c);
    for (double& v : p.w1) v = rng.next_gauss();
    orthonormalize_columns(p.w1, phases * m, latent_shape.c);
    const double gain = options.input_gain *
                        std::sqrt(static_cast<double>(phases * m) / latent_shape.c);
    for (double& v : p.w1) v *= gain;
  }
  {
    Rng rng(mix_seed(seed, 0xA4));
    p.c1.assign(static_cast<size_t>(phases) * m, 0.0);
    if (!options.linear_hook) {
      for (double& v : p.c1) v = rng.next_gauss() * options.bias_scale;
    }
  }

  // Layer 2: per-phase mixing with orthonormal columns scaled by output_gain;
  // tall (or square) in the channel dimension so the left inverse is exact.
  {
    Rng rng(mix_seed(seed, 0xA5));
    p.w2.resize(static_cast<size_t>(phases) * ch_n * m);
    for (int ph = 0; ph < phases; ++ph) {
      std::vector<double> block(static_cast<size_t>(ch_n) * m);
      for (double& v : block) v = rng.next_gauss();
      orthonormalize_columns(block, ch_n, m);
      for (auto& v : block) v *= options.output_gain;
      std::memcpy(&p.w2[static_cast<size_t>(ph) * ch_n * m], block.data(),
                  block.size() * sizeof(double));
    }
  }

  // Caches: per-phase left inverse of W2 and the stacked-layer Gram inverse.
  {
    p.w2_pinv.resize(static_cast<size_t>(phases) * m * ch_n);
    for (int ph = 0; ph < phases; ++ph) {
      const double* w2b = &p.w2[static_cast<size_t>(ph) * ch_n * m];
      std::vector<double> gram(static_cast<size_t>(m) * m, 0.0);
      for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
          double acc = 0.0;
          for (int r = 0; r < ch_n; ++r) acc += w2b[static_cast<size_t>(r) * m + i] * w2b[static_cast<size_t>(r) * m + j];
          gram[static_cast<size_t>(i) * m + j] = acc;
        }
      }
      const auto gram_inv = invert_dense(gram, m);
      for (int i = 0; i < m; ++i) {
        for (int r = 0; r < ch_n; ++r) {
          double acc = 0.0;
          for (int j = 0; j < m; ++j) {
            acc += gram_inv[static_cast<size_t>(i) * m + j] * w2b[static_cast<size_t>(r) * m + j];
          }
          p.w2_pinv[(static_cast<size_t>(ph) * m + i) * ch_n + r] = acc;
        }
      }
    }
  }
  {
    const int c = latent_shape.c;
    std::vector<double> gram(static_cast<size_t>(c) * c, 0.0);
    for (int i = 0; i < c; ++i) {
      for (int j = 0; j < c; ++j) {
        double acc = 0.0;
        for (int r = 0; r < phases * m; ++r) {
          acc += p.w1[static_cast<size_t>(r) * c + i] * p.w1[static_cast<size_t>(r) * c + j];
        }
        gram[static_cast<size_t>(i) * c + j] = acc;
      }
    }
    p.gram_inv = invert_dense(gram, c);
  }

  // Analytic global Lipschitz bound for the decoder: the elementwise slopes
  // are capped (sigmoid' <= 1/4, tanh(alpha*.)' <= alpha) and the two linear
  // layers contribute their spectral norms.
  {
    double w2_max = 0.0;
    for (int ph = 0; ph < phases; ++ph) {
      std::vector<double> block(&p.w2[static_cast<size_t>(ph) * ch_n * m],
                                &p.w2[static_cast<size_t>(ph) * ch_n * m] + ch_n * m);
      w2_max = std::max(w2_max, spectral_norm_dense(block, ch_n, m));
    }
    const double w1_norm = spectral_norm_dense(p.w1, phases * m, latent_shape.c);
    const double cap_sig = options.linear_hook ? 1.0 : 0.25;
    const double cap_phi = options.linear_hook ? 1.0 : options.alpha;
    p.certified_lipschitz = cap_sig * w2_max * cap_phi * w1_norm;
  }

  return p;
}

LatentTensor denoise(const GeneratorParams& params, const LatentTensor& z_t) {
  check_latent(params, z_t, "denoise");
  const int n = params.latent_size();
  LatentTensor out = LatentTensor::zeros(params.latent);
  for (int r = 0; r < n; ++r) {
    out.values[r] = dot(&params.q[static_cast<size_t>(r) * n], z_t.values.data(), n) +
                    params.bias[r];
  }
  return out;
}

LatentTensor invert_denoise(const GeneratorParams& params, const LatentTensor& z0) {
  check_latent(params, z0, "invert_denoise");
  const int n = params.latent_size();
  std::vector<double> shifted(n);
  for (int i = 0; i < n; ++i) shifted[i] = z0.values[i] - params.bias[i];
  LatentTensor out = LatentTensor::zeros(params.latent);
  for (int ci = 0; ci < n; ++ci) {
    double acc = 0.0;
    for (int r = 0; r < n; ++r) acc += params.q[static_cast<size_t>(r) * n + ci] * shifted[r];
    out.values[ci] = acc;
  }
  return out;
}

ImageTensor decode_image(const GeneratorParams& params, const LatentTensor& z0) {
  check_latent(params, z0, "decode_image");
  ImageTensor out = ImageTensor::zeros(params.image);
  PassBuffers buf;
  buf.z = &z0;
  buf.image_out = &out;
  run_decoder_pass(params, Pass::kDecode, buf);
  return out;
}

LatentTensor encode_image(const GeneratorParams& params, const ImageTensor& x) {
  check_image(params, x, "encode_image");
  for (double v : x.pixels) {
    if (std::isnan(v)) throw InvalidInput("encode_image: NaN pixel");
  }
  const int c = params.latent.c, lh = params.latent.h, lw = params.latent.w;
  const int k = params.upsample, m = params.options.hidden_width;
  const int ch_n = params.image.channels;
  const int phases = k * k;
  const int site_stride = lh * lw;
  const bool linear = params.options.linear_hook;
  const double alpha = params.options.alpha;

  LatentTensor out = LatentTensor::zeros(params.latent);
  double that[kMaxImageChannels], hhat[kMaxHidden], v_acc[kMaxLatentChannels];

  for (int sy = 0; sy < lh; ++sy) {
    for (int sx = 0; sx < lw; ++sx) {
      const int site = sy * lw + sx;
      for (int ci = 0; ci < c; ++ci) v_acc[ci] = 0.0;
      for (int ph = 0; ph < phases; ++ph) {
        const int iy = sy * k + ph / k;
        const int ix = sx * k + ph % k;
        const size_t pix_base = (static_cast<size_t>(iy) * params.image.width + ix) * ch_n;
        for (int ci = 0; ci < ch_n; ++ci) {
          double v = x.pixels[pix_base + ci];
          if (linear) {
            that[ci] = v;
          } else {
            v = clamp(v, kUnsquashClamp, 1.0 - kUnsquashClamp);
            that[ci] = std::log(v / (1.0 - v));
          }
        }
        const double* pinv = &params.w2_pinv[static_cast<size_t>(ph) * m * ch_n];
        for (int j = 0; j < m; ++j) {
          double h = dot(&pinv[static_cast<size_t>(j) * ch_n], that, ch_n);
          if (!linear) {
            h = clamp(h, -kTanhClamp, kTanhClamp);
            h = std::atanh(h) / alpha;
          }
          hhat[j] = h - params.c1[static_cast<size_t>(ph) * m + j];
        }
        const double* w1_block = &params.w1[static_cast<size_t>(ph) * m * c];
        for (int j = 0; j < m; ++j) {
          for (int ci = 0; ci < c; ++ci) {
            v_acc[ci] += w1_block[static_cast<size_t>(j) * c + ci] * hhat[j];
          }
        }
      }
      for (int ci = 0; ci < c; ++ci) {
        double acc = 0.0;
        for (int cj = 0; cj < c; ++cj) {
          acc += params.gram_inv[static_cast<size_t>(ci) * c + cj] * v_acc[cj];
        }
        out.values[static_cast<size_t>(ci) * site_stride + site] = acc;
      }
    }
  }
  return out;
}

std::pair<double, LatentTensor> loss_and_gradient(const GeneratorParams& params,
                                                  const LatentTensor& z,
                                                  const ImageTensor& x_ref) {
  check_latent(params, z, "loss_and_gradient");
  check_image(params, x_ref, "loss_and_gradient");
  LatentTensor grad = LatentTensor::zeros(params.latent);
  PassBuffers buf;
  buf.z = &z;
  buf.x_ref = &x_ref;
  buf.latent_out = &grad;
  run_decoder_pass(params, Pass::kLossGrad, buf);
  return {buf.loss, std::move(grad)};
}

ImageTensor decoder_jvp(const GeneratorParams& params, const LatentTensor& z,
                        const LatentTensor& v) {
  check_latent(params, z, "decoder_jvp");
  check_latent(params, v, "decoder_jvp");
  ImageTensor out = ImageTensor::zeros(params.image);
  PassBuffers buf;
  buf.z = &z;
  buf.v_in = &v;
  buf.image_out = &out;
  run_decoder_pass(params, Pass::kJvp, buf);
  return out;
}

LatentTensor decoder_vjp(const GeneratorParams& params, const LatentTensor& z,
                         const ImageTensor& w) {
  check_latent(params, z, "decoder_vjp");
  check_image(params, w, "decoder_vjp");
  LatentTensor out = LatentTensor::zeros(params.latent);
  PassBuffers buf;
  buf.z = &z;
  buf.w_in = &w;
  buf.latent_out = &out;
  run_decoder_pass(params, Pass::kVjp, buf);
  return out;
}

LipschitzEstimate estimate_lipschitz(const GeneratorParams& params, int probes,
                                     int iters, std::uint64_t probe_seed) {
  require(probes >= 1, "estimate_lipschitz: probes must be >= 1");
  require(iters >= 10, "estimate_lipschitz: iters must be >= 10");
  LipschitzEstimate est;
  est.per_probe.reserve(probes);
  for (int pi = 0; pi < probes; ++pi) {
    const LatentTensor z = gaussian_latent(params.latent, mix_seed(probe_seed, 2 * pi));
    LatentTensor v = gaussian_latent(params.latent, mix_seed(probe_seed, 2 * pi + 1));
    const double vn = norm2(v.values);
    for (double& x : v.values) x /= vn;

    double sigma = 0.0, residual = 1.0;
    int used = iters;
    for (int it = 1; it <= iters; ++it) {
      const ImageTensor jv = decoder_jvp(params, z, v);
      double s = 0.0;
      for (double x : jv.pixels) s += x * x;
      s = std::sqrt(s);
      LatentTensor jtjv = decoder_vjp(params, z, jv);
      const double nrm = norm2(jtjv.values);
      if (nrm == 0.0) {
        sigma = 0.0;
        residual = 0.0;
        used = it;
        break;
      }
      for (double& x : jtjv.values) x /= nrm;
      v = std::move(jtjv);
      residual = std::fabs(s - sigma) / std::max(s, 1e-300);
      sigma = s;
      if (it >= 3 && residual <= 1e-6) {
        used = it;
        break;
      }
    }
    if (sigma > est.value) {
      est.value = sigma;
      est.iterations = used;
      est.residual = residual;
    }
    est.per_probe.push_back(sigma);
  }
  return est;
}

LatentTensor gaussian_latent(Shape3 shape, std::uint64_t seed) {
  LatentTensor z = LatentTensor::zeros(shape);
  Rng rng(seed);
  for (double& v : z.values) v = rng.next_gauss();
  return z;
}

}  // namespace stego
