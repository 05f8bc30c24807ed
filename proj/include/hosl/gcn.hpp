// Copyright 2026 The HOSL Authors.
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

#ifndef HOSL_GCN_HPP_
#define HOSL_GCN_HPP_

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "hosl/dataset.hpp"
#include "hosl/graph.hpp"
#include "hosl/matrix.hpp"

namespace hosl {

// Two-layer GCN: softmax(S^ relu(S^ X W1) W2).
struct GcnParams {
  DenseMatrix w1;  // F x H
  DenseMatrix w2;  // H x C
  std::size_t hidden = 0;
};

// Glorot-uniform initialization, deterministic under seed.
GcnParams init_gcn_params(std::size_t in_features, std::size_t hidden,
                          std::size_t classes, std::uint64_t seed);

struct TrainConfig {
  double lr = 0.01;            // mu'
  double weight_decay = 5e-4;  // L2 on the first layer
  int epochs = 200;
  int inner_steps = 1;         // tau, used by the structure learner
  double dropout = 0.5;        // train-time only
  std::uint64_t seed = 0;
  bool adaptive = true;        // adaptive moment updates; plain descent if off
  std::size_t hidden = 16;
};

// Intermediates of one forward pass, kept for backprop.
struct GcnCache {
  DenseMatrix s_hat;      // N x N aggregation matrix as used
  DenseMatrix x;          // N x F input (after dropout when training)
  DenseMatrix p1;         // s_hat * x
  DenseMatrix h1;         // relu(p1 w1) (after dropout when training)
  DenseMatrix p2;         // s_hat * h1
  DenseMatrix probs;      // N x C
  std::vector<char> relu_active;  // N*H mask of positive pre-activations
  DenseMatrix w1;
  DenseMatrix w2;
};

struct GcnOutput {
  DenseMatrix logits;
  DenseMatrix probabilities;  // rows sum to 1
  GcnCache cache;
};

// Deterministic forward pass (no dropout). Shape mismatches are rejected.
GcnOutput gcn_forward(const NormalizedAdjacency& s_hat, const DenseMatrix& x,
                      const GcnParams& params);

// Mean over the masked nodes of -log p[true class], log clamped at
// tol::kLogClamp. Throws on an empty mask or invalid labels.
double masked_cross_entropy(const DenseMatrix& probabilities,
                            const std::vector<int>& labels,
                            std::span<const std::size_t> mask);

// Exact gradients of the masked cross-entropy. grad_s_hat accumulates both
// appearances of the aggregation matrix and is returned unsymmetrized.
struct GcnGradients {
  DenseMatrix w1;
  DenseMatrix w2;
  DenseMatrix s_hat;
};

GcnGradients gcn_backward(const GcnCache& cache, const std::vector<int>& labels,
                          std::span<const std::size_t> mask);

double accuracy(const DenseMatrix& probabilities,
                const std::vector<int>& labels,
                std::span<const std::size_t> mask);

// Owns parameters plus optimizer state; one full-batch step at a time so the
// structure learner can interleave its own updates.
class GcnTrainer {
 public:
  GcnTrainer(GcnParams params, const TrainConfig& cfg);

  // One gradient step on the masked cross-entropy; returns the loss at the
  // point where the gradient was taken. Dropout only when `use_dropout`.
  double step(const DenseMatrix& s_hat, const DenseMatrix& x,
              const std::vector<int>& labels,
              std::span<const std::size_t> train_mask, bool use_dropout);

  const GcnParams& params() const { return params_; }

 private:
  GcnParams params_;
  TrainConfig cfg_;
  int step_count_ = 0;
  DenseMatrix m_w1_, v_w1_, m_w2_, v_w2_;  // adaptive moments
  std::mt19937_64 dropout_rng_;
};

struct TrainHistory {
  std::vector<double> train_loss;
  std::vector<double> val_accuracy;
  int best_epoch = -1;
  double best_val_accuracy = 0.0;
};

struct TrainResult {
  GcnParams params;  // best-validation checkpoint
  TrainHistory history;
};

// Full training run with per-epoch validation tracking; returns the
// parameters of the best-validation epoch. Diverging loss raises
// NumericError naming the epoch.
TrainResult train_gcn(const NormalizedAdjacency& s_hat, const DenseMatrix& x,
                      const std::vector<int>& labels, const SplitMask& split,
                      const TrainConfig& cfg);
TrainResult train_gcn(const Graph& g, const SplitMask& split,
                      const TrainConfig& cfg);

}  // namespace hosl

#endif  // HOSL_GCN_HPP_
