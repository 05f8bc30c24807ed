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

#ifndef HOSL_LEARNER_HPP_
#define HOSL_LEARNER_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "hosl/dataset.hpp"
#include "hosl/gcn.hpp"
#include "hosl/graph.hpp"
#include "hosl/matrix.hpp"

namespace hosl {

// Hyper-parameters of the joint structure/GNN objective
//   alpha |S|_1 + beta |S|_* + sum_k eta_k |S^ - A^^k|_F^2
//   + lambda tr(X^T L^(S) X) + classification loss,
// optimized by alternating proximal-gradient steps on S and gradient steps
// on the GNN parameters.
struct LearnerConfig {
  double alpha = 5e-4;
  double beta = 1.5;
  double lambda = 1e-3;
  std::vector<double> eta = {1.0, 1.0, 1.0};  // one weight per order
  int tau = 1;              // GNN steps per outer iteration
  double lr_s = 1e-2;       // structure step size (mu)
  double lr_gnn = 1e-2;     // GNN step size (mu')
  int outer_iters = 400;
  int patience = 50;        // outer iterations without validation gain
  std::uint64_t seed = 0;

  int order() const { return static_cast<int>(eta.size()); }
  void validate() const;
};

// Normalized powers A^^1..A^^K of the poisoned graph, computed once and used
// as fidelity targets throughout a run.
struct HighOrderTargets {
  std::vector<DenseMatrix> powers;
};

HighOrderTargets make_high_order_targets(const NormalizedAdjacency& a_hat,
                                         int order);

struct LossComponents {
  double l1 = 0.0;
  double nuclear = 0.0;
  std::vector<double> fidelity;  // per order
  double smooth = 0.0;
  double gnn = 0.0;
  double total = 0.0;
};

// All components of the objective at the given S and GNN parameters.
LossComponents structure_loss(const DenseMatrix& s,
                              const HighOrderTargets& targets,
                              const DenseMatrix& x,
                              const std::vector<int>& labels,
                              std::span<const std::size_t> mask,
                              const GcnParams& params,
                              const LearnerConfig& cfg);

// Gradient of the differentiable terms (fidelity + smoothness + GNN loss)
// with respect to S. The normalization degrees are held fixed at their
// current values within the step (stop-gradient); the result is symmetrized.
// L1/nuclear terms are excluded: the proximal steps handle them.
DenseMatrix grad_structure_smooth(const DenseMatrix& s,
                                  const HighOrderTargets& targets,
                                  const DenseMatrix& x,
                                  const std::vector<int>& labels,
                                  std::span<const std::size_t> mask,
                                  const GcnParams& params,
                                  const LearnerConfig& cfg);

// Proximal weights scaled by the step size.
struct ProxWeights {
  double alpha_eff = 0.0;
  double beta_eff = 0.0;
};

ProxWeights scaled_prox_weights(const LearnerConfig& cfg, double lr_s);

// The proximal block of one outer iteration, in the fixed order: nuclear
// shrinkage, then elementwise L1 shrinkage, then the box projection (clamp
// to [0,1], zero the diagonal, symmetrize exactly).
DenseMatrix prox_structure_step(const DenseMatrix& s, double alpha_eff,
                                double beta_eff);

struct LearnedStructure {
  DenseMatrix s;         // in [0,1], symmetric, zero diagonal
  GcnParams params;
  std::vector<LossComponents> loss_trace;
  int best_iteration = -1;
  double best_val_accuracy = 0.0;
  int iterations_run = 0;
};

// Alternating optimization: per outer iteration a gradient step on S, the
// nuclear then L1 proximal maps, the box projection (clamp to [0,1], zero
// diagonal, symmetrize), then tau GNN parameter steps. Keeps the
// best-validation pair (S, theta); stops on the iteration cap or after
// `patience` iterations without validation improvement.
LearnedStructure learn_structure(const Graph& poisoned, const SplitMask& split,
                                 const LearnerConfig& cfg,
                                 const TrainConfig& train_cfg);

}  // namespace hosl

#endif  // HOSL_LEARNER_HPP_
