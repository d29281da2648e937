// Copyright 2026 The Arousal Scattering Authors.
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

#include "arousal/model/layers.hpp"

#include <cmath>
#include <string>

#include "arousal/core/errors.hpp"

namespace arousal::model {

namespace {
inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

void check_cols(const MatrixD& m, std::size_t expected, const char* what) {
  if (m.cols() != expected)
    throw Error(ErrorKind::kShape, std::string(what) + ": expected " + std::to_string(expected) +
                                       " columns, got " + std::to_string(m.cols()));
}
}  // namespace

MatrixD matmul_nt(const MatrixD& A, const MatrixD& B) {
  const std::size_t m = A.rows(), n = B.rows(), k = A.cols();
  MatrixD C(m, n);
  for (std::size_t i = 0; i < m; ++i) {
    const double* a = A.row(i).data();
    double* c = C.row(i).data();
    for (std::size_t j = 0; j < n; ++j) {
      const double* b = B.row(j).data();
      double s = 0.0;
      for (std::size_t p = 0; p < k; ++p) s += a[p] * b[p];
      c[j] = s;
    }
  }
  return C;
}

void matmul_tn_acc(const MatrixD& A, const MatrixD& B, MatrixD& C) {
  const std::size_t k = A.rows(), m = A.cols(), n = B.cols();
  for (std::size_t p = 0; p < k; ++p) {
    const double* a = A.row(p).data();
    const double* b = B.row(p).data();
    for (std::size_t i = 0; i < m; ++i) {
      const double ai = a[i];
      if (ai == 0.0) continue;
      double* c = C.row(i).data();
      for (std::size_t j = 0; j < n; ++j) c[j] += ai * b[j];
    }
  }
}

MatrixD matmul_nn(const MatrixD& A, const MatrixD& B) {
  const std::size_t m = A.rows(), k = A.cols(), n = B.cols();
  MatrixD C(m, n);
  for (std::size_t i = 0; i < m; ++i) {
    double* c = C.row(i).data();
    const double* a = A.row(i).data();
    for (std::size_t p = 0; p < k; ++p) {
      const double ap = a[p];
      if (ap == 0.0) continue;
      const double* b = B.row(p).data();
      for (std::size_t j = 0; j < n; ++j) c[j] += ap * b[j];
    }
  }
  return C;
}

LstmCache lstm_forward_cached(const LstmLayer& layer, const MatrixD& seq) {
  const std::size_t H = layer.hidden();
  if (layer.W.rows() != 4 * H || layer.U.rows() != 4 * H || layer.b.size() != 4 * H)
    throw Error(ErrorKind::kShape, "lstm: inconsistent parameter shapes");
  if (seq.rows() > 0) check_cols(seq, layer.input_dim(), "lstm input");
  const std::size_t steps = seq.rows();

  LstmCache cache;
  cache.input = seq;
  cache.gates = matmul_nt(seq, layer.W);  // pre-activation input projection
  cache.cell = MatrixD(steps, H);
  cache.hidden = MatrixD(steps, H);

  std::vector<double> h_prev(H, 0.0), c_prev(H, 0.0);
  for (std::size_t t = 0; t < steps; ++t) {
    double* a = cache.gates.row(t).data();
    for (std::size_t r = 0; r < 4 * H; ++r) {
      const double* u = layer.U.row(r).data();
      double s = layer.b[r];
      for (std::size_t k = 0; k < H; ++k) s += u[k] * h_prev[k];
      a[r] += s;
    }
    double* c = cache.cell.row(t).data();
    double* h = cache.hidden.row(t).data();
    for (std::size_t k = 0; k < H; ++k) {
      const double i = sigmoid(a[k]);
      const double f = sigmoid(a[H + k]);
      const double g = std::tanh(a[2 * H + k]);
      const double o = sigmoid(a[3 * H + k]);
      a[k] = i;
      a[H + k] = f;
      a[2 * H + k] = g;
      a[3 * H + k] = o;
      c[k] = f * c_prev[k] + i * g;
      h[k] = o * std::tanh(c[k]);
    }
    std::copy_n(h, H, h_prev.data());
    std::copy_n(c, H, c_prev.data());
  }
  return cache;
}

MatrixD lstm_forward(const LstmLayer& layer, const MatrixD& seq) {
  return lstm_forward_cached(layer, seq).hidden;
}

MatrixD lstm_backward(const LstmLayer& layer, const LstmCache& cache, const MatrixD& d_hidden,
                      LstmLayer& grad, bool want_input_grad) {
  const std::size_t H = layer.hidden();
  const std::size_t steps = cache.hidden.rows();
  if (d_hidden.rows() != steps || d_hidden.cols() != H)
    throw Error(ErrorKind::kShape, "lstm_backward: gradient shape mismatch");

  MatrixD d_pre(steps, 4 * H);  // gradient wrt gate pre-activations
  std::vector<double> dh_next(H, 0.0), dc_next(H, 0.0);
  for (std::size_t step = steps; step-- > 0;) {
    const double* a = cache.gates.row(step).data();
    const double* c = cache.cell.row(step).data();
    const double* dh_out = d_hidden.row(step).data();
    double* da = d_pre.row(step).data();
    for (std::size_t k = 0; k < H; ++k) {
      const double i = a[k], f = a[H + k], g = a[2 * H + k], o = a[3 * H + k];
      const double c_prev = step > 0 ? cache.cell(step - 1, k) : 0.0;
      const double tc = std::tanh(c[k]);
      const double dh = dh_out[k] + dh_next[k];
      const double dc = dc_next[k] + dh * o * (1.0 - tc * tc);
      da[k] = dc * g * i * (1.0 - i);
      da[H + k] = dc * c_prev * f * (1.0 - f);
      da[2 * H + k] = dc * i * (1.0 - g * g);
      da[3 * H + k] = dh * tc * o * (1.0 - o);
      dc_next[k] = dc * f;
    }
    // dh_next = U^T da
    std::fill(dh_next.begin(), dh_next.end(), 0.0);
    for (std::size_t r = 0; r < 4 * H; ++r) {
      const double d = da[r];
      if (d == 0.0) continue;
      const double* u = layer.U.row(r).data();
      for (std::size_t k = 0; k < H; ++k) dh_next[k] += d * u[k];
    }
  }

  // Parameter gradients: dW += dA^T X, dU += dA[1:]^T Hid[:-1], db += sum dA.
  matmul_tn_acc(d_pre, cache.input, grad.W);
  for (std::size_t step = 1; step < steps; ++step) {
    const double* da = d_pre.row(step).data();
    const double* hp = cache.hidden.row(step - 1).data();
    for (std::size_t r = 0; r < 4 * H; ++r) {
      const double d = da[r];
      if (d == 0.0) continue;
      double* gu = grad.U.row(r).data();
      for (std::size_t k = 0; k < H; ++k) gu[k] += d * hp[k];
    }
  }
  for (std::size_t step = 0; step < steps; ++step) {
    const double* da = d_pre.row(step).data();
    for (std::size_t r = 0; r < 4 * H; ++r) grad.b[r] += da[r];
  }
  if (!want_input_grad) return {};
  return matmul_nn(d_pre, layer.W);
}

MatrixD bn_train_forward(const MatrixD& x, const BatchNorm& bn, double eps,
                         std::span<const std::uint8_t> mask, BnCache& cache) {
  const std::size_t frames = x.rows(), F = bn.gamma.size();
  check_cols(x, F, "batch norm input");
  if (!mask.empty() && mask.size() != frames)
    throw Error(ErrorKind::kShape, "batch norm: mask length differs from frame count");

  cache.mask.assign(mask.begin(), mask.end());
  cache.pooled = 0;
  for (std::size_t t = 0; t < frames; ++t)
    if (mask.empty() || mask[t]) ++cache.pooled;
  if (cache.pooled < 2)
    throw Error(ErrorKind::kStatistics, "batch norm in train mode needs >= 2 frames, got " +
                                            std::to_string(cache.pooled));

  const double inv_n = 1.0 / static_cast<double>(cache.pooled);
  cache.mean.assign(F, 0.0);
  cache.var.assign(F, 0.0);
  for (std::size_t t = 0; t < frames; ++t) {
    if (!mask.empty() && !mask[t]) continue;
    for (std::size_t k = 0; k < F; ++k) cache.mean[k] += x(t, k);
  }
  for (double& m : cache.mean) m *= inv_n;
  for (std::size_t t = 0; t < frames; ++t) {
    if (!mask.empty() && !mask[t]) continue;
    for (std::size_t k = 0; k < F; ++k) {
      const double d = x(t, k) - cache.mean[k];
      cache.var[k] += d * d;
    }
  }
  cache.inv_std.resize(F);
  for (std::size_t k = 0; k < F; ++k) {
    cache.var[k] *= inv_n;
    cache.inv_std[k] = 1.0 / std::sqrt(cache.var[k] + eps);
  }

  cache.normalized = MatrixD(frames, F);
  MatrixD y(frames, F);
  for (std::size_t t = 0; t < frames; ++t)
    for (std::size_t k = 0; k < F; ++k) {
      const double xh = (x(t, k) - cache.mean[k]) * cache.inv_std[k];
      cache.normalized(t, k) = xh;
      y(t, k) = bn.gamma[k] * xh + bn.beta[k];
    }
  return y;
}

MatrixD bn_infer_forward(const MatrixD& x, const BatchNorm& bn, double eps) {
  const std::size_t F = bn.gamma.size();
  check_cols(x, F, "batch norm input");
  MatrixD y(x.rows(), F);
  for (std::size_t k = 0; k < F; ++k) {
    const double scale = bn.gamma[k] / std::sqrt(bn.running_var[k] + eps);
    for (std::size_t t = 0; t < x.rows(); ++t)
      y(t, k) = (x(t, k) - bn.running_mean[k]) * scale + bn.beta[k];
  }
  return y;
}

void update_running_stats(BatchNorm& bn, const BnCache& cache, double momentum) {
  for (std::size_t k = 0; k < bn.running_mean.size(); ++k) {
    bn.running_mean[k] = momentum * bn.running_mean[k] + (1.0 - momentum) * cache.mean[k];
    bn.running_var[k] = momentum * bn.running_var[k] + (1.0 - momentum) * cache.var[k];
  }
}

MatrixD bn_forward(const MatrixD& x, BatchNorm& bn, Mode mode, double eps, double momentum,
                   std::span<const std::uint8_t> mask) {
  if (mode == Mode::kInfer) return bn_infer_forward(x, bn, eps);
  BnCache cache;
  MatrixD y = bn_train_forward(x, bn, eps, mask, cache);
  update_running_stats(bn, cache, momentum);
  return y;
}

MatrixD bn_backward(const BatchNorm& bn, const BnCache& cache, const MatrixD& dy,
                    BatchNorm& grad) {
  const std::size_t frames = dy.rows(), F = bn.gamma.size();
  const auto& mask = cache.mask;
  const double inv_n = 1.0 / static_cast<double>(cache.pooled);
  MatrixD dx(frames, F);
  for (std::size_t k = 0; k < F; ++k) {
    // Every frame is normalized with the pooled statistics, so every frame
    // contributes to their gradients; only pooled frames receive them.
    double sum_dxh = 0.0, sum_dxh_xh = 0.0;
    for (std::size_t t = 0; t < frames; ++t) {
      const double g = dy(t, k);
      const double xh = cache.normalized(t, k);
      grad.gamma[k] += g * xh;
      grad.beta[k] += g;
      const double dxh = g * bn.gamma[k];
      sum_dxh += dxh;
      sum_dxh_xh += dxh * xh;
    }
    const double s = cache.inv_std[k];
    for (std::size_t t = 0; t < frames; ++t) {
      const double dxh = dy(t, k) * bn.gamma[k];
      double v = dxh * s;
      if (mask.empty() || mask[t])
        v -= s * inv_n * (sum_dxh + cache.normalized(t, k) * sum_dxh_xh);
      dx(t, k) = v;
    }
  }
  return dx;
}

}  // namespace arousal::model
