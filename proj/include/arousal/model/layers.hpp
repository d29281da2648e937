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

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "arousal/core/types.hpp"
#include "arousal/model/params.hpp"

namespace arousal::model {

enum class Mode { kTrain, kInfer };

// ---- LSTM ------------------------------------------------------------------

// Activations kept for backpropagation through time.
struct LstmCache {
  MatrixD input;  // frames x in
  MatrixD gates;  // frames x 4H, post-activation (i, f, g, o)
  MatrixD cell;   // frames x H
  MatrixD hidden; // frames x H
};

// Zero initial state; i, f, o = sigmoid, g = tanh,
// c_t = f * c_{t-1} + i * g, h_t = o * tanh(c_t).
MatrixD lstm_forward(const LstmLayer& layer, const MatrixD& seq);
LstmCache lstm_forward_cached(const LstmLayer& layer, const MatrixD& seq);

// Accumulates parameter gradients into `grad` and returns d(loss)/d(input)
// (an empty matrix when `want_input_grad` is false).
MatrixD lstm_backward(const LstmLayer& layer, const LstmCache& cache, const MatrixD& d_hidden,
                      LstmLayer& grad, bool want_input_grad = true);

// ---- Batch normalization ---------------------------------------------------

// Statistics pool for train mode: frames with a non-zero mask entry. An empty
// mask selects every frame.
struct BnCache {
  MatrixD normalized;        // x_hat, every frame
  std::vector<double> mean;  // batch mean per feature
  std::vector<double> var;   // biased batch variance per feature
  std::vector<double> inv_std;
  std::vector<std::uint8_t> mask;
  std::size_t pooled = 0;
};

// Train mode: normalize with batch statistics over the masked frames (at
// least two), then y = gamma * x_hat + beta. Pure; running stats untouched.
MatrixD bn_train_forward(const MatrixD& x, const BatchNorm& bn, double eps,
                         std::span<const std::uint8_t> mask, BnCache& cache);

// Infer mode: normalize with the running statistics.
MatrixD bn_infer_forward(const MatrixD& x, const BatchNorm& bn, double eps);

// running <- momentum * running + (1 - momentum) * batch.
void update_running_stats(BatchNorm& bn, const BnCache& cache, double momentum);

// Mode-dispatching form: train mode also updates the running statistics.
MatrixD bn_forward(const MatrixD& x, BatchNorm& bn, Mode mode, double eps, double momentum,
                   std::span<const std::uint8_t> mask = {});

// Accumulates d gamma / d beta into `grad`, returns d(loss)/dx including the
// paths through the batch mean and variance.
MatrixD bn_backward(const BatchNorm& bn, const BnCache& cache, const MatrixD& dy,
                    BatchNorm& grad);

// ---- small dense kernels (row-major, fixed summation order) ----------------

// C = A * B^T   (A: m x k, B: n x k)
MatrixD matmul_nt(const MatrixD& A, const MatrixD& B);
// C += A^T * B  (A: k x m, B: k x n, C: m x n)
void matmul_tn_acc(const MatrixD& A, const MatrixD& B, MatrixD& C);
// C = A * B     (A: m x k, B: k x n)
MatrixD matmul_nn(const MatrixD& A, const MatrixD& B);

}  // namespace arousal::model
