#pragma once

#include <algorithm>
#include <cstring>
#include <limits>
#include <vector>

#if defined(__AVX2__) && defined(__FMA__)
#include <immintrin.h>
#define MCPAD_HAVE_AVX2_GEMM 1
#endif

#include "mcpad/tensor.hpp"

namespace mcpad {

namespace detail {

// C[MxN] (+)= A[MxK] * B[KxN], all row-major. Every C element accumulates
// over k in sequence, so the vector and scalar paths produce bit-identical
// results.
inline void gemm(const double* __restrict A, const double* __restrict B,
                 double* __restrict C, std::size_t M, std::size_t K, std::size_t N,
                 bool accumulate) {
  if (!accumulate) std::memset(C, 0, M * N * sizeof(double));
  std::size_t j = 0;
#ifdef MCPAD_HAVE_AVX2_GEMM
  // 4x8 register tile of C, FMA over k.
  for (; j + 8 <= N; j += 8) {
    std::size_t i = 0;
    for (; i + 4 <= M; i += 4) {
      __m256d c00 = _mm256_loadu_pd(C + (i + 0) * N + j);
      __m256d c01 = _mm256_loadu_pd(C + (i + 0) * N + j + 4);
      __m256d c10 = _mm256_loadu_pd(C + (i + 1) * N + j);
      __m256d c11 = _mm256_loadu_pd(C + (i + 1) * N + j + 4);
      __m256d c20 = _mm256_loadu_pd(C + (i + 2) * N + j);
      __m256d c21 = _mm256_loadu_pd(C + (i + 2) * N + j + 4);
      __m256d c30 = _mm256_loadu_pd(C + (i + 3) * N + j);
      __m256d c31 = _mm256_loadu_pd(C + (i + 3) * N + j + 4);
      for (std::size_t k = 0; k < K; ++k) {
        const __m256d b0 = _mm256_loadu_pd(B + k * N + j);
        const __m256d b1 = _mm256_loadu_pd(B + k * N + j + 4);
        __m256d a;
        a = _mm256_broadcast_sd(A + (i + 0) * K + k);
        c00 = _mm256_fmadd_pd(a, b0, c00);
        c01 = _mm256_fmadd_pd(a, b1, c01);
        a = _mm256_broadcast_sd(A + (i + 1) * K + k);
        c10 = _mm256_fmadd_pd(a, b0, c10);
        c11 = _mm256_fmadd_pd(a, b1, c11);
        a = _mm256_broadcast_sd(A + (i + 2) * K + k);
        c20 = _mm256_fmadd_pd(a, b0, c20);
        c21 = _mm256_fmadd_pd(a, b1, c21);
        a = _mm256_broadcast_sd(A + (i + 3) * K + k);
        c30 = _mm256_fmadd_pd(a, b0, c30);
        c31 = _mm256_fmadd_pd(a, b1, c31);
      }
      _mm256_storeu_pd(C + (i + 0) * N + j, c00);
      _mm256_storeu_pd(C + (i + 0) * N + j + 4, c01);
      _mm256_storeu_pd(C + (i + 1) * N + j, c10);
      _mm256_storeu_pd(C + (i + 1) * N + j + 4, c11);
      _mm256_storeu_pd(C + (i + 2) * N + j, c20);
      _mm256_storeu_pd(C + (i + 2) * N + j + 4, c21);
      _mm256_storeu_pd(C + (i + 3) * N + j, c30);
      _mm256_storeu_pd(C + (i + 3) * N + j + 4, c31);
    }
    for (; i < M; ++i) {
      __m256d c0 = _mm256_loadu_pd(C + i * N + j);
      __m256d c1 = _mm256_loadu_pd(C + i * N + j + 4);
      for (std::size_t k = 0; k < K; ++k) {
        const __m256d a = _mm256_broadcast_sd(A + i * K + k);
        c0 = _mm256_fmadd_pd(a, _mm256_loadu_pd(B + k * N + j), c0);
        c1 = _mm256_fmadd_pd(a, _mm256_loadu_pd(B + k * N + j + 4), c1);
      }
      _mm256_storeu_pd(C + i * N + j, c0);
      _mm256_storeu_pd(C + i * N + j + 4, c1);
    }
  }
#endif
  if (j < N) {
    const std::size_t jl = N - j;
    for (std::size_t k = 0; k < K; ++k) {
      const double* __restrict brow = B + k * N + j;
      for (std::size_t i = 0; i < M; ++i) {
        const double a = A[i * K + k];
        double* __restrict crow = C + i * N + j;
        for (std::size_t q = 0; q < jl; ++q) crow[q] += a * brow[q];
      }
    }
  }
}

inline void transpose_blocked(const double* __restrict src, double* __restrict dst,
                              std::size_t rows, std::size_t cols) {
  constexpr std::size_t TB = 32;
  for (std::size_t r0 = 0; r0 < rows; r0 += TB) {
    const std::size_t r1 = std::min(r0 + TB, rows);
    for (std::size_t c0 = 0; c0 < cols; c0 += TB) {
      const std::size_t c1 = std::min(c0 + TB, cols);
      for (std::size_t r = r0; r < r1; ++r)
        for (std::size_t c = c0; c < c1; ++c) dst[c * rows + r] = src[r * cols + c];
    }
  }
}

// C[MxN] (+)= A^T * B where A is stored KxM.
inline void gemm_tn(const double* __restrict A, const double* __restrict B,
                    double* __restrict C, std::size_t M, std::size_t K, std::size_t N,
                    bool accumulate) {
  thread_local std::vector<double> at;
  at.resize(M * K);
  transpose_blocked(A, at.data(), K, M);
  gemm(at.data(), B, C, M, K, N, accumulate);
}

// C[MxN] (+)= A[MxK] * B^T where B is stored NxK.
inline void gemm_nt(const double* __restrict A, const double* __restrict B,
                    double* __restrict C, std::size_t M, std::size_t K, std::size_t N,
                    bool accumulate) {
  thread_local std::vector<double> bt;
  bt.resize(K * N);
  transpose_blocked(B, bt.data(), N, K);
  gemm(A, bt.data(), C, M, K, N, accumulate);
}

inline std::vector<double>& scratch_col() {
  thread_local std::vector<double> buf;
  return buf;
}

inline std::vector<double>& scratch_col2() {
  thread_local std::vector<double> buf;
  return buf;
}

struct ConvDims {
  std::size_t c_in, h, w, c_out, k, oh, ow;
  int stride, padding;
};

inline ConvDims conv_dims(const TensorND& input, const TensorND& kernel, int stride,
                          int padding, const char* op) {
  require(input.dims() == 3, op, ": input must be CxHxW, got ", input.shape_str());
  require(kernel.dims() == 4, op, ": kernel must be 4-d, got ", kernel.shape_str());
  require(stride >= 1, op, ": stride must be positive, got ", stride);
  require(padding >= 0, op, ": padding must be non-negative, got ", padding);
  require(kernel.dim(2) == kernel.dim(3), op, ": only square kernels supported, got ",
          kernel.shape_str());
  ConvDims d{};
  d.c_in = input.dim(0);
  d.h = input.dim(1);
  d.w = input.dim(2);
  d.c_out = kernel.dim(0);
  d.k = kernel.dim(2);
  d.stride = stride;
  d.padding = padding;
  require(kernel.dim(1) == d.c_in, op, ": channel mismatch, input ", input.shape_str(),
          " vs kernel ", kernel.shape_str());
  require(d.h + 2 * std::size_t(padding) >= d.k && d.w + 2 * std::size_t(padding) >= d.k,
          op, ": kernel ", kernel.shape_str(), " larger than padded input ",
          input.shape_str(), " (padding ", padding, ")");
  d.oh = (d.h + 2 * padding - d.k) / stride + 1;
  d.ow = (d.w + 2 * padding - d.k) / stride + 1;
  return d;
}

// Unfold input patches into a [C*K*K x OH*OW] matrix.
inline void im2col(const TensorND& x, const ConvDims& d, std::vector<double>& col) {
  const std::size_t n = d.oh * d.ow;
  if (d.padding > 0) {
    col.assign(d.c_in * d.k * d.k * n, 0.0);
  } else {
    col.resize(d.c_in * d.k * d.k * n);  // every element is written below
  }
  for (std::size_t c = 0; c < d.c_in; ++c) {
    for (std::size_t ky = 0; ky < d.k; ++ky) {
      for (std::size_t kx = 0; kx < d.k; ++kx) {
        double* row = col.data() + ((c * d.k + ky) * d.k + kx) * n;
        for (std::size_t oy = 0; oy < d.oh; ++oy) {
          const long iy = long(oy) * d.stride - d.padding + long(ky);
          if (iy < 0 || iy >= long(d.h)) continue;
          const double* src = &x.data[(c * d.h + iy) * d.w];
          double* dst = row + oy * d.ow;
          for (std::size_t ox = 0; ox < d.ow; ++ox) {
            const long ix = long(ox) * d.stride - d.padding + long(kx);
            if (ix >= 0 && ix < long(d.w)) dst[ox] = src[ix];
          }
        }
      }
    }
  }
}

// Adjoint of im2col: scatter-add column matrix back onto an image.
inline void col2im(const std::vector<double>& col, const ConvDims& d, TensorND& x) {
  const std::size_t n = d.oh * d.ow;
  for (std::size_t c = 0; c < d.c_in; ++c) {
    for (std::size_t ky = 0; ky < d.k; ++ky) {
      for (std::size_t kx = 0; kx < d.k; ++kx) {
        const double* row = col.data() + ((c * d.k + ky) * d.k + kx) * n;
        for (std::size_t oy = 0; oy < d.oh; ++oy) {
          const long iy = long(oy) * d.stride - d.padding + long(ky);
          if (iy < 0 || iy >= long(d.h)) continue;
          double* dst = &x.data[(c * d.h + iy) * d.w];
          const double* src = row + oy * d.ow;
          for (std::size_t ox = 0; ox < d.ow; ++ox) {
            const long ix = long(ox) * d.stride - d.padding + long(kx);
            if (ix >= 0 && ix < long(d.w)) dst[ix] += src[ox];
          }
        }
      }
    }
  }
}

}  // namespace detail

// --- convolution -----------------------------------------------------------

// Cross-correlation of a CxHxW input with a [C_out x C_in x K x K] kernel
// plus per-channel bias.
inline TensorND conv2d(const TensorND& input, const TensorND& kernel,
                       const std::vector<double>& bias, int stride = 1,
                       int padding = 0) {
  const auto d = detail::conv_dims(input, kernel, stride, padding, "conv2d");
  require(bias.size() == d.c_out, "conv2d: bias length ", bias.size(),
          " != output channels ", d.c_out);
  std::vector<double>& col = detail::scratch_col();
  detail::im2col(input, d, col);
  TensorND out({d.c_out, d.oh, d.ow});
  const std::size_t n = d.oh * d.ow;
  detail::gemm(kernel.data.data(), col.data(), out.data.data(), d.c_out,
               d.c_in * d.k * d.k, n, false);
  for (std::size_t co = 0; co < d.c_out; ++co) {
    double* row = out.data.data() + co * n;
    const double b = bias[co];
    for (std::size_t i = 0; i < n; ++i) row[i] += b;
  }
  return out;
}

struct ConvGrads {
  TensorND grad_input;
  TensorND grad_kernel;
  std::vector<double> grad_bias;
};

struct ConvBackwardOpts {
  bool need_input_grad = true;
  bool need_param_grad = true;
};

// Forward context is (input, kernel, stride, padding); the caller keeps it.
inline ConvGrads conv2d_backward(const TensorND& grad_out, const TensorND& input,
                                 const TensorND& kernel, int stride = 1,
                                 int padding = 0, ConvBackwardOpts opts = {}) {
  const auto d = detail::conv_dims(input, kernel, stride, padding, "conv2d_backward");
  require(grad_out.dims() == 3 && grad_out.dim(0) == d.c_out && grad_out.dim(1) == d.oh &&
              grad_out.dim(2) == d.ow,
          "conv2d_backward: grad_out ", grad_out.shape_str(),
          " does not match forward output [", d.c_out, "x", d.oh, "x", d.ow, "]");
  const std::size_t n = d.oh * d.ow;
  const std::size_t krows = d.c_in * d.k * d.k;
  ConvGrads g;
  if (opts.need_param_grad) {
    std::vector<double>& col = detail::scratch_col();
    detail::im2col(input, d, col);
    g.grad_kernel = TensorND(kernel.shape);
    detail::gemm_nt(grad_out.data.data(), col.data(), g.grad_kernel.data.data(), d.c_out,
                    n, krows, false);
    g.grad_bias.assign(d.c_out, 0.0);
    for (std::size_t co = 0; co < d.c_out; ++co) {
      const double* row = grad_out.data.data() + co * n;
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += row[i];
      g.grad_bias[co] = s;
    }
  }
  if (opts.need_input_grad) {
    std::vector<double>& gcol = detail::scratch_col2();
    gcol.resize(krows * n);
    detail::gemm_tn(kernel.data.data(), grad_out.data.data(), gcol.data(), krows, d.c_out,
                    n, false);
    g.grad_input = TensorND(input.shape);
    detail::col2im(gcol, d, g.grad_input);
  }
  return g;
}

// --- transposed convolution --------------------------------------------------

// Adjoint of conv2d with a shared [C_fwd_out x C_fwd_in x K x K] kernel:
// input carries the kernel's first axis, output its second, so
// <conv2d(x,W), y> == <x, deconv2d(y,W)> with zero biases.
inline TensorND deconv2d(const TensorND& input, const TensorND& kernel,
                         const std::vector<double>& bias, int stride = 1,
                         int padding = 0) {
  require(input.dims() == 3, "deconv2d: input must be CxHxW, got ", input.shape_str());
  require(kernel.dims() == 4 && kernel.dim(2) == kernel.dim(3),
          "deconv2d: kernel must be square 4-d, got ", kernel.shape_str());
  require(input.dim(0) == kernel.dim(0), "deconv2d: channel mismatch, input ",
          input.shape_str(), " vs kernel ", kernel.shape_str());
  require(stride >= 1 && padding >= 0, "deconv2d: bad stride/padding");
  const std::size_t k = kernel.dim(2);
  const std::size_t c_out = kernel.dim(1);
  const long oh = (long(input.dim(1)) - 1) * stride - 2 * padding + long(k);
  const long ow = (long(input.dim(2)) - 1) * stride - 2 * padding + long(k);
  require(oh >= 1 && ow >= 1, "deconv2d: non-positive output size for input ",
          input.shape_str(), " kernel ", kernel.shape_str());
  require(bias.size() == c_out, "deconv2d: bias length ", bias.size(),
          " != output channels ", c_out);

  TensorND out({c_out, std::size_t(oh), std::size_t(ow)});
  detail::ConvDims d{};
  d.c_in = c_out;
  d.h = std::size_t(oh);
  d.w = std::size_t(ow);
  d.c_out = input.dim(0);
  d.k = k;
  d.stride = stride;
  d.padding = padding;
  d.oh = input.dim(1);
  d.ow = input.dim(2);
  const std::size_t n = d.oh * d.ow;
  const std::size_t krows = c_out * k * k;
  std::vector<double>& col = detail::scratch_col2();
  col.resize(krows * n);
  detail::gemm_tn(kernel.data.data(), input.data.data(), col.data(), krows, input.dim(0),
                  n, false);
  detail::col2im(col, d, out);
  for (std::size_t c = 0; c < c_out; ++c) {
    double* plane = out.data.data() + c * d.h * d.w;
    for (std::size_t i = 0; i < d.h * d.w; ++i) plane[i] += bias[c];
  }
  return out;
}

inline ConvGrads deconv2d_backward(const TensorND& grad_out, const TensorND& input,
                                   const TensorND& kernel, int stride = 1,
                                   int padding = 0, ConvBackwardOpts opts = {}) {
  const std::size_t k = kernel.dim(2);
  const std::size_t c_out = kernel.dim(1);
  const long oh = (long(input.dim(1)) - 1) * stride - 2 * padding + long(k);
  const long ow = (long(input.dim(2)) - 1) * stride - 2 * padding + long(k);
  require(grad_out.dims() == 3 && grad_out.dim(0) == c_out &&
              grad_out.dim(1) == std::size_t(oh) && grad_out.dim(2) == std::size_t(ow),
          "deconv2d_backward: grad_out ", grad_out.shape_str(),
          " does not match forward output [", c_out, "x", oh, "x", ow, "]");
  ConvGrads g;
  if (opts.need_input_grad) {
    std::vector<double> zero_bias(input.dim(0), 0.0);
    g.grad_input = conv2d(grad_out, kernel, zero_bias, stride, padding);
  }
  if (opts.need_param_grad) {
    const auto d = detail::conv_dims(grad_out, kernel, stride, padding,
                                     "deconv2d_backward");
    const std::size_t n = d.oh * d.ow;
    std::vector<double>& col = detail::scratch_col();
    detail::im2col(grad_out, d, col);
    g.grad_kernel = TensorND(kernel.shape);
    detail::gemm_nt(input.data.data(), col.data(), g.grad_kernel.data.data(),
                    input.dim(0), n, c_out * k * k, false);
    g.grad_bias.assign(c_out, 0.0);
    for (std::size_t c = 0; c < c_out; ++c) {
      const double* plane = grad_out.data.data() + c * grad_out.dim(1) * grad_out.dim(2);
      double s = 0.0;
      for (std::size_t i = 0; i < grad_out.dim(1) * grad_out.dim(2); ++i) s += plane[i];
      g.grad_bias[c] = s;
    }
  }
  return g;
}

// --- max pooling -------------------------------------------------------------

struct PoolResult {
  TensorND output;
  std::vector<std::size_t> argmax;  // flat input index per output element
};

// Ties break to the first index in row-major order so backward routing is
// deterministic.
inline PoolResult maxpool2d(const TensorND& input, int window, int stride) {
  require(input.dims() == 3, "maxpool2d: input must be CxHxW, got ", input.shape_str());
  require(window >= 1 && stride >= 1, "maxpool2d: window/stride must be positive");
  const std::size_t c = input.dim(0), h = input.dim(1), w = input.dim(2);
  require(std::size_t(window) <= h && std::size_t(window) <= w,
          "maxpool2d: window ", window, " exceeds input ", input.shape_str());
  const std::size_t oh = (h - window) / stride + 1;
  const std::size_t ow = (w - window) / stride + 1;
  PoolResult r{TensorND({c, oh, ow}), std::vector<std::size_t>(c * oh * ow)};
  for (std::size_t ci = 0; ci < c; ++ci) {
    for (std::size_t oy = 0; oy < oh; ++oy) {
      for (std::size_t ox = 0; ox < ow; ++ox) {
        double best = -std::numeric_limits<double>::infinity();
        std::size_t best_idx = 0;
        for (std::size_t ky = 0; ky < std::size_t(window); ++ky) {
          for (std::size_t kx = 0; kx < std::size_t(window); ++kx) {
            const std::size_t iy = oy * stride + ky;
            const std::size_t ix = ox * stride + kx;
            const std::size_t idx = (ci * h + iy) * w + ix;
            if (input.data[idx] > best) {
              best = input.data[idx];
              best_idx = idx;
            }
          }
        }
        const std::size_t oidx = (ci * oh + oy) * ow + ox;
        r.output.data[oidx] = best;
        r.argmax[oidx] = best_idx;
      }
    }
  }
  return r;
}

inline TensorND maxpool2d_backward(const TensorND& grad_out,
                                   const std::vector<std::size_t>& argmax,
                                   const std::vector<std::size_t>& input_shape) {
  require(grad_out.numel() == argmax.size(),
          "maxpool2d_backward: grad/argmax length mismatch");
  TensorND g(input_shape, 0.0);
  for (std::size_t i = 0; i < argmax.size(); ++i) g.data[argmax[i]] += grad_out.data[i];
  return g;
}

// --- nearest-neighbour upsampling ---------------------------------------------

inline TensorND upsample_nearest(const TensorND& input, int factor) {
  require(input.dims() == 3, "upsample_nearest: input must be CxHxW, got ",
          input.shape_str());
  require(factor >= 1, "upsample_nearest: factor must be >= 1, got ", factor);
  const std::size_t c = input.dim(0), h = input.dim(1), w = input.dim(2);
  const std::size_t f = std::size_t(factor);
  TensorND out({c, h * f, w * f});
  for (std::size_t ci = 0; ci < c; ++ci)
    for (std::size_t y = 0; y < h * f; ++y) {
      const double* src = &input.data[(ci * h + y / f) * w];
      double* dst = &out.data[(ci * h * f + y) * w * f];
      for (std::size_t x = 0; x < w * f; ++x) dst[x] = src[x / f];
    }
  return out;
}

inline TensorND upsample_nearest_backward(const TensorND& grad_out, int factor) {
  require(grad_out.dims() == 3, "upsample_nearest_backward: grad must be CxHxW");
  require(factor >= 1, "upsample_nearest_backward: factor must be >= 1");
  const std::size_t f = std::size_t(factor);
  const std::size_t c = grad_out.dim(0), oh = grad_out.dim(1), ow = grad_out.dim(2);
  require(oh % f == 0 && ow % f == 0,
          "upsample_nearest_backward: grad dims not divisible by factor");
  TensorND g({c, oh / f, ow / f}, 0.0);
  for (std::size_t ci = 0; ci < c; ++ci)
    for (std::size_t y = 0; y < oh; ++y) {
      const double* src = &grad_out.data[(ci * oh + y) * ow];
      double* dst = &g.data[(ci * (oh / f) + y / f) * (ow / f)];
      for (std::size_t x = 0; x < ow; ++x) dst[x / f] += src[x];
    }
  return g;
}

// --- fully connected -----------------------------------------------------------

inline TensorND linear(const TensorND& input, const TensorND& weights,
                       const std::vector<double>& bias) {
  require(weights.dims() == 2, "linear: weights must be m x n, got ",
          weights.shape_str());
  const std::size_t m = weights.dim(0), n = weights.dim(1);
  require(input.numel() == n, "linear: input length ", input.numel(),
          " != weight columns ", n);
  require(bias.size() == m, "linear: bias length ", bias.size(), " != rows ", m);
  TensorND out({m});
  for (std::size_t i = 0; i < m; ++i) {
    const double* wrow = weights.data.data() + i * n;
    double s = bias[i];
    for (std::size_t j = 0; j < n; ++j) s += wrow[j] * input.data[j];
    out.data[i] = s;
  }
  return out;
}

struct LinearGrads {
  TensorND grad_input;
  TensorND grad_weights;
  std::vector<double> grad_bias;
};

inline LinearGrads linear_backward(const TensorND& grad_out, const TensorND& input,
                                   const TensorND& weights) {
  const std::size_t m = weights.dim(0), n = weights.dim(1);
  require(grad_out.numel() == m, "linear_backward: grad length ", grad_out.numel(),
          " != rows ", m);
  require(input.numel() == n, "linear_backward: input length mismatch");
  LinearGrads g{TensorND({n}, 0.0), TensorND({m, n}), std::vector<double>(m)};
  for (std::size_t i = 0; i < m; ++i) {
    const double go = grad_out.data[i];
    g.grad_bias[i] = go;
    const double* wrow = weights.data.data() + i * n;
    double* gwrow = g.grad_weights.data.data() + i * n;
    for (std::size_t j = 0; j < n; ++j) {
      gwrow[j] = go * input.data[j];
      g.grad_input.data[j] += go * wrow[j];
    }
  }
  return g;
}

// --- activations ----------------------------------------------------------------

inline TensorND relu(const TensorND& x) {
  TensorND out(x.shape);
  for (std::size_t i = 0; i < x.numel(); ++i) out.data[i] = x.data[i] > 0 ? x.data[i] : 0;
  return out;
}

// Subgradient 0 at x == 0.
inline TensorND relu_backward(const TensorND& grad_out, const TensorND& input) {
  require(grad_out.same_shape(input), "relu_backward: shape mismatch ",
          grad_out.shape_str(), " vs ", input.shape_str());
  TensorND g(grad_out.shape);
  for (std::size_t i = 0; i < g.numel(); ++i)
    g.data[i] = input.data[i] > 0 ? grad_out.data[i] : 0.0;
  return g;
}

inline double sigmoid_scalar(double x) {
  if (x >= 0) {
    const double e = std::exp(-x);
    return 1.0 / (1.0 + e);
  }
  const double e = std::exp(x);
  return e / (1.0 + e);
}

inline TensorND sigmoid(const TensorND& x) {
  TensorND out(x.shape);
  for (std::size_t i = 0; i < x.numel(); ++i) out.data[i] = sigmoid_scalar(x.data[i]);
  return out;
}

inline TensorND sigmoid_backward(const TensorND& grad_out, const TensorND& output) {
  require(grad_out.same_shape(output), "sigmoid_backward: shape mismatch ",
          grad_out.shape_str(), " vs ", output.shape_str());
  TensorND g(grad_out.shape);
  for (std::size_t i = 0; i < g.numel(); ++i) {
    const double s = output.data[i];
    g.data[i] = grad_out.data[i] * s * (1.0 - s);
  }
  return g;
}

}  // namespace mcpad
