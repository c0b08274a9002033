// Copyright 2026 The stabscope Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "stabscope/cnn/layers.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "stabscope/cnn/gemm.hpp"
#include "stabscope/errors.hpp"

namespace stabscope::cnn {

namespace {

void require_rank(const Shape& s, std::size_t rank, const char* who) {
  if (s.size() != rank) {
    throw DimensionError(std::string(who) + ": expected rank " + std::to_string(rank) + ", got " + shape_str(s));
  }
}

std::size_t ceil_div(std::size_t a, std::size_t b) { return (a + b - 1) / b; }

}  // namespace

// ---- Conv3d ----

Conv3d::Conv3d(std::size_t in_channels, std::size_t out_channels, Extent3 kernel)
    : cin_(in_channels), cout_(out_channels), kernel_(kernel) {
  if (cin_ == 0 || cout_ == 0) throw DimensionError("Conv3d: zero channels");
  for (auto k : kernel_) {
    if (k == 0 || k % 2 == 0) throw DimensionError("Conv3d: kernel extents must be odd");
  }
  weight_ = {"conv.weight", Tensor({cout_, cin_, kernel_[0], kernel_[1], kernel_[2]}),
             Tensor({cout_, cin_, kernel_[0], kernel_[1], kernel_[2]}), true};
  bias_ = {"conv.bias", Tensor({cout_}), Tensor({cout_}), false};
}

Shape Conv3d::output_shape(const Shape& in) const {
  require_rank(in, 4, "Conv3d");
  if (in[0] != cin_) {
    throw DimensionError("Conv3d: input has " + std::to_string(in[0]) + " channels, expected " +
                         std::to_string(cin_));
  }
  return {cout_, in[1], in[2], in[3]};
}

void Conv3d::im2col(const Tensor& in) {
  const std::size_t nd = in.dim(1), nh = in.dim(2), nw = in.dim(3);
  const std::size_t plane = nd * nh * nw;
  const auto [kd, kh, kw] = kernel_;
  const auto pd = static_cast<std::ptrdiff_t>(kd / 2), ph = static_cast<std::ptrdiff_t>(kh / 2),
             pw = static_cast<std::ptrdiff_t>(kw / 2);
  col_.assign(cin_ * kd * kh * kw * plane, 0.0);
  double* row = col_.data();
  for (std::size_t c = 0; c < cin_; ++c) {
    const double* src = in.data() + c * plane;
    for (std::size_t a = 0; a < kd; ++a) {
      for (std::size_t b = 0; b < kh; ++b) {
        for (std::size_t e = 0; e < kw; ++e, row += plane) {
          const std::ptrdiff_t od = static_cast<std::ptrdiff_t>(a) - pd;
          const std::ptrdiff_t oh = static_cast<std::ptrdiff_t>(b) - ph;
          const std::ptrdiff_t ow = static_cast<std::ptrdiff_t>(e) - pw;
          const std::size_t w_lo = static_cast<std::size_t>(std::max<std::ptrdiff_t>(0, -ow));
          const std::size_t w_hi = static_cast<std::size_t>(
              std::min<std::ptrdiff_t>(static_cast<std::ptrdiff_t>(nw), static_cast<std::ptrdiff_t>(nw) - ow));
          for (std::size_t d = 0; d < nd; ++d) {
            const std::ptrdiff_t sd = static_cast<std::ptrdiff_t>(d) + od;
            if (sd < 0 || sd >= static_cast<std::ptrdiff_t>(nd)) continue;
            for (std::size_t h = 0; h < nh; ++h) {
              const std::ptrdiff_t sh = static_cast<std::ptrdiff_t>(h) + oh;
              if (sh < 0 || sh >= static_cast<std::ptrdiff_t>(nh)) continue;
              double* dst = row + (d * nh + h) * nw;
              const double* s = src + (static_cast<std::size_t>(sd) * nh + static_cast<std::size_t>(sh)) * nw;
              for (std::size_t w = w_lo; w < w_hi; ++w) dst[w] = s[static_cast<std::ptrdiff_t>(w) + ow];
            }
          }
        }
      }
    }
  }
}

void Conv3d::forward(const Tensor& in, Tensor& out, bool, Rng*) {
  out.resize(output_shape(in.shape()));
  const std::size_t plane = in.dim(1) * in.dim(2) * in.dim(3);
  const std::size_t kdim = cin_ * kernel_[0] * kernel_[1] * kernel_[2];
  im2col(in);
  for (std::size_t o = 0; o < cout_; ++o) std::fill_n(out.data() + o * plane, plane, bias_.value[o]);
  gemm_nn(cout_, plane, kdim, weight_.value.data(), col_.data(), out.data());
}

void Conv3d::backward(const Tensor& in, const Tensor& grad_out, Tensor* grad_in) {
  const std::size_t nd = in.dim(1), nh = in.dim(2), nw = in.dim(3);
  const std::size_t plane = nd * nh * nw;
  const std::size_t kdim = cin_ * kernel_[0] * kernel_[1] * kernel_[2];
  if (grad_out.shape() != output_shape(in.shape())) throw DimensionError("Conv3d::backward: gradient shape");

  for (std::size_t o = 0; o < cout_; ++o) {
    const double* g = grad_out.data() + o * plane;
    double s = 0.0;
    for (std::size_t p = 0; p < plane; ++p) s += g[p];
    bias_.grad[o] += s;
  }
  gemm_nt(cout_, kdim, plane, grad_out.data(), col_.data(), weight_.grad.data());
  if (grad_in == nullptr) return;

  std::vector<double> dcol(kdim * plane, 0.0);
  gemm_tn(kdim, plane, cout_, weight_.value.data(), grad_out.data(), dcol.data());
  grad_in->resize(in.shape());
  grad_in->fill(0.0);
  const auto [kd, kh, kw] = kernel_;
  const auto pd = static_cast<std::ptrdiff_t>(kd / 2), ph = static_cast<std::ptrdiff_t>(kh / 2),
             pw = static_cast<std::ptrdiff_t>(kw / 2);
  const double* row = dcol.data();
  for (std::size_t c = 0; c < cin_; ++c) {
    double* dst_plane = grad_in->data() + c * plane;
    for (std::size_t a = 0; a < kd; ++a) {
      for (std::size_t b = 0; b < kh; ++b) {
        for (std::size_t e = 0; e < kw; ++e, row += plane) {
          const std::ptrdiff_t od = static_cast<std::ptrdiff_t>(a) - pd;
          const std::ptrdiff_t oh = static_cast<std::ptrdiff_t>(b) - ph;
          const std::ptrdiff_t ow = static_cast<std::ptrdiff_t>(e) - pw;
          const std::size_t w_lo = static_cast<std::size_t>(std::max<std::ptrdiff_t>(0, -ow));
          const std::size_t w_hi = static_cast<std::size_t>(
              std::min<std::ptrdiff_t>(static_cast<std::ptrdiff_t>(nw), static_cast<std::ptrdiff_t>(nw) - ow));
          for (std::size_t d = 0; d < nd; ++d) {
            const std::ptrdiff_t sd = static_cast<std::ptrdiff_t>(d) + od;
            if (sd < 0 || sd >= static_cast<std::ptrdiff_t>(nd)) continue;
            for (std::size_t h = 0; h < nh; ++h) {
              const std::ptrdiff_t sh = static_cast<std::ptrdiff_t>(h) + oh;
              if (sh < 0 || sh >= static_cast<std::ptrdiff_t>(nh)) continue;
              const double* s = row + (d * nh + h) * nw;
              double* t = dst_plane + (static_cast<std::size_t>(sd) * nh + static_cast<std::size_t>(sh)) * nw;
              for (std::size_t w = w_lo; w < w_hi; ++w) t[static_cast<std::ptrdiff_t>(w) + ow] += s[w];
            }
          }
        }
      }
    }
  }
}

// ---- Relu ----

void Relu::forward(const Tensor& in, Tensor& out, bool, Rng*) {
  out.resize(in.shape());
  for (std::size_t i = 0; i < in.size(); ++i) out[i] = in[i] > 0.0 ? in[i] : 0.0;
}

void Relu::backward(const Tensor& in, const Tensor& grad_out, Tensor* grad_in) {
  if (grad_in == nullptr) return;
  grad_in->resize(in.shape());
  for (std::size_t i = 0; i < in.size(); ++i) (*grad_in)[i] = in[i] > 0.0 ? grad_out[i] : 0.0;
}

// ---- MaxPool3d ----

MaxPool3d::MaxPool3d(Extent3 window) : window_(window) {
  for (auto w : window_) {
    if (w == 0) throw DimensionError("MaxPool3d: zero window");
  }
}

Shape MaxPool3d::output_shape(const Shape& in) const {
  require_rank(in, 4, "MaxPool3d");
  return {in[0], ceil_div(in[1], window_[0]), ceil_div(in[2], window_[1]), ceil_div(in[3], window_[2])};
}

void MaxPool3d::forward(const Tensor& in, Tensor& out, bool, Rng*) {
  const Shape os = output_shape(in.shape());
  out.resize(os);
  argmax_.resize(out.size());
  const std::size_t nd = in.dim(1), nh = in.dim(2), nw = in.dim(3);
  std::size_t o = 0;
  for (std::size_t c = 0; c < os[0]; ++c) {
    for (std::size_t d = 0; d < os[1]; ++d) {
      for (std::size_t h = 0; h < os[2]; ++h) {
        for (std::size_t w = 0; w < os[3]; ++w, ++o) {
          std::size_t best = 0;
          double best_v = -INFINITY;
          const std::size_t d1 = std::min(nd, (d + 1) * window_[0]);
          const std::size_t h1 = std::min(nh, (h + 1) * window_[1]);
          const std::size_t w1 = std::min(nw, (w + 1) * window_[2]);
          for (std::size_t a = d * window_[0]; a < d1; ++a) {
            for (std::size_t b = h * window_[1]; b < h1; ++b) {
              for (std::size_t e = w * window_[2]; e < w1; ++e) {
                const std::size_t idx = ((c * nd + a) * nh + b) * nw + e;
                if (in[idx] > best_v) {
                  best_v = in[idx];
                  best = idx;
                }
              }
            }
          }
          out[o] = best_v;
          argmax_[o] = best;
        }
      }
    }
  }
}

void MaxPool3d::backward(const Tensor& in, const Tensor& grad_out, Tensor* grad_in) {
  if (grad_in == nullptr) return;
  grad_in->resize(in.shape());
  grad_in->fill(0.0);
  for (std::size_t o = 0; o < grad_out.size(); ++o) (*grad_in)[argmax_[o]] += grad_out[o];
}

// ---- AvgPool3d ----

AvgPool3d::AvgPool3d(Extent3 window) : window_(window) {
  for (auto w : window_) {
    if (w == 0) throw DimensionError("AvgPool3d: zero window");
  }
}

Shape AvgPool3d::output_shape(const Shape& in) const {
  require_rank(in, 4, "AvgPool3d");
  return {in[0], ceil_div(in[1], window_[0]), ceil_div(in[2], window_[1]), ceil_div(in[3], window_[2])};
}

template <typename Fn>
void AvgPool3d::for_each_tap(const Shape& in, Fn&& fn) const {
  const Shape os = output_shape(in);
  const std::size_t nd = in[1], nh = in[2], nw = in[3];
  std::size_t o = 0;
  for (std::size_t c = 0; c < os[0]; ++c) {
    for (std::size_t d = 0; d < os[1]; ++d) {
      const std::size_t d0 = d * window_[0], d1 = std::min(nd, d0 + window_[0]);
      for (std::size_t h = 0; h < os[2]; ++h) {
        const std::size_t h0 = h * window_[1], h1 = std::min(nh, h0 + window_[1]);
        for (std::size_t w = 0; w < os[3]; ++w, ++o) {
          const std::size_t w0 = w * window_[2], w1 = std::min(nw, w0 + window_[2]);
          const double scale = 1.0 / static_cast<double>((d1 - d0) * (h1 - h0) * (w1 - w0));
          for (std::size_t a = d0; a < d1; ++a) {
            for (std::size_t b = h0; b < h1; ++b) {
              for (std::size_t e = w0; e < w1; ++e) fn(o, ((c * nd + a) * nh + b) * nw + e, scale);
            }
          }
        }
      }
    }
  }
}

void AvgPool3d::forward(const Tensor& in, Tensor& out, bool, Rng*) {
  out.resize(output_shape(in.shape()));
  out.fill(0.0);
  for_each_tap(in.shape(), [&](std::size_t o, std::size_t i, double s) { out[o] += s * in[i]; });
}

void AvgPool3d::backward(const Tensor& in, const Tensor& grad_out, Tensor* grad_in) {
  if (grad_in == nullptr) return;
  grad_in->resize(in.shape());
  grad_in->fill(0.0);
  for_each_tap(in.shape(), [&](std::size_t o, std::size_t i, double s) { (*grad_in)[i] += s * grad_out[o]; });
}

// ---- GlobalAvgPool ----

Shape GlobalAvgPool::output_shape(const Shape& in) const {
  require_rank(in, 4, "GlobalAvgPool");
  return {in[0]};
}

void GlobalAvgPool::forward(const Tensor& in, Tensor& out, bool, Rng*) {
  out.resize(output_shape(in.shape()));
  const std::size_t plane = in.size() / in.dim(0);
  for (std::size_t c = 0; c < in.dim(0); ++c) {
    const double* p = in.data() + c * plane;
    double s = 0.0;
    for (std::size_t i = 0; i < plane; ++i) s += p[i];
    out[c] = s / static_cast<double>(plane);
  }
}

void GlobalAvgPool::backward(const Tensor& in, const Tensor& grad_out, Tensor* grad_in) {
  if (grad_in == nullptr) return;
  grad_in->resize(in.shape());
  const std::size_t plane = in.size() / in.dim(0);
  for (std::size_t c = 0; c < in.dim(0); ++c) {
    std::fill_n(grad_in->data() + c * plane, plane, grad_out[c] / static_cast<double>(plane));
  }
}

// ---- Flatten ----

void Flatten::forward(const Tensor& in, Tensor& out, bool, Rng*) {
  out = in;
  out.reshape({in.size()});
}

void Flatten::backward(const Tensor& in, const Tensor& grad_out, Tensor* grad_in) {
  if (grad_in == nullptr) return;
  *grad_in = grad_out;
  grad_in->reshape(in.shape());
}

// ---- Dense ----

Dense::Dense(std::size_t in_features, std::size_t out_features) : in_(in_features), out_(out_features) {
  if (in_ == 0 || out_ == 0) throw DimensionError("Dense: zero features");
  weight_ = {"dense.weight", Tensor({out_, in_}), Tensor({out_, in_}), true};
  bias_ = {"dense.bias", Tensor({out_}), Tensor({out_}), false};
}

Shape Dense::output_shape(const Shape& in) const {
  require_rank(in, 1, "Dense");
  if (in[0] != in_) {
    throw DimensionError("Dense: input width " + std::to_string(in[0]) + ", expected " + std::to_string(in_));
  }
  return {out_};
}

void Dense::forward(const Tensor& in, Tensor& out, bool, Rng*) {
  out.resize(output_shape(in.shape()));
  for (std::size_t o = 0; o < out_; ++o) {
    const double* w = weight_.value.data() + o * in_;
    double s = bias_.value[o];
    for (std::size_t i = 0; i < in_; ++i) s += w[i] * in[i];
    out[o] = s;
  }
}

void Dense::backward(const Tensor& in, const Tensor& grad_out, Tensor* grad_in) {
  for (std::size_t o = 0; o < out_; ++o) {
    const double g = grad_out[o];
    bias_.grad[o] += g;
    double* w = weight_.grad.data() + o * in_;
    for (std::size_t i = 0; i < in_; ++i) w[i] += g * in[i];
  }
  if (grad_in == nullptr) return;
  grad_in->resize(in.shape());
  grad_in->fill(0.0);
  for (std::size_t o = 0; o < out_; ++o) {
    const double g = grad_out[o];
    const double* w = weight_.value.data() + o * in_;
    for (std::size_t i = 0; i < in_; ++i) (*grad_in)[i] += g * w[i];
  }
}

// ---- Dropout ----

Dropout::Dropout(double rate) : rate_(rate) {
  if (!(rate >= 0.0 && rate < 1.0)) throw DimensionError("Dropout: rate must lie in [0, 1)");
}

void Dropout::forward(const Tensor& in, Tensor& out, bool training, Rng* rng) {
  out = in;
  mask_.clear();
  if (!training || rate_ == 0.0) return;
  if (rng == nullptr) throw DimensionError("Dropout: training pass needs an rng");
  const double scale = 1.0 / (1.0 - rate_);
  mask_.resize(in.size());
  for (std::size_t i = 0; i < in.size(); ++i) {
    mask_[i] = uniform01(*rng) < rate_ ? 0.0 : scale;
    out[i] *= mask_[i];
  }
}

void Dropout::backward(const Tensor& in, const Tensor& grad_out, Tensor* grad_in) {
  if (grad_in == nullptr) return;
  *grad_in = grad_out;
  grad_in->reshape(in.shape());
  if (mask_.empty()) return;
  for (std::size_t i = 0; i < grad_in->size(); ++i) (*grad_in)[i] *= mask_[i];
}

// ---- scalar helpers ----

double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

double sigmoid_grad(double p) { return p * (1.0 - p); }

double bce(double p, int label) {
  const double q = std::clamp(p, kProbClamp, 1.0 - kProbClamp);
  return label == 1 ? -std::log(q) : -std::log(1.0 - q);
}

double normal(Rng& rng) {
  const double u1 = 1.0 - uniform01(rng);  // (0, 1]
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace stabscope::cnn
