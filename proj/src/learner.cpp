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

#include "hosl/learner.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "hosl/eigen_sym.hpp"
#include "hosl/error.hpp"
#include "hosl/prox.hpp"
#include "hosl/tolerances.hpp"

namespace hosl {

void LearnerConfig::validate() const {
  if (!(alpha >= 0.0 && beta >= 0.0 && lambda >= 0.0)) {
    throw InvalidInput("LearnerConfig: regularizer weights must be >= 0");
  }
  if (eta.empty() || eta.size() > 3) {
    throw InvalidInput("LearnerConfig: order must lie in {1,2,3}");
  }
  for (double e : eta) {
    if (!(e >= 0.0)) throw InvalidInput("LearnerConfig: eta must be >= 0");
  }
  if (tau < 1) throw InvalidInput("LearnerConfig: tau must be >= 1");
  if (!(lr_s > 0.0)) throw InvalidInput("LearnerConfig: lr_s must be > 0");
  if (!(lr_gnn > 0.0)) throw InvalidInput("LearnerConfig: lr_gnn must be > 0");
  if (outer_iters < 1) {
    throw InvalidInput("LearnerConfig: outer_iters must be >= 1");
  }
  if (patience < 1) throw InvalidInput("LearnerConfig: patience must be >= 1");
}

HighOrderTargets make_high_order_targets(const NormalizedAdjacency& a_hat,
                                         int order) {
  if (order < 1 || order > 3) {
    throw InvalidInput("make_high_order_targets: order must lie in {1,2,3}");
  }
  HighOrderTargets targets;
  targets.powers.push_back(a_hat.matrix);
  for (int k = 2; k <= order; ++k) {
    targets.powers.push_back(matmul(targets.powers.back(), a_hat.matrix));
  }
  return targets;
}

namespace {

// Feature-smoothness quadratic of the weighted structure:
// tr(X^T L(S) X) with L(S) = D~(S) - (S + I), which equals
// (1/2) sum_ij S_ij |x_i - x_j|^2 (self-loops contribute nothing).
// Zero when all features coincide.
double smoothness_quadratic(const DenseMatrix& s, const DenseMatrix& x) {
  const std::size_t n = s.rows();
  std::vector<double> row_norm(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t f = 0; f < x.cols(); ++f) {
      row_norm[i] += x(i, f) * x(i, f);
    }
  }
  const DenseMatrix sx = matmul(s, x);
  double cross = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    cross += x.data()[k] * sx.data()[k];
  }
  double weighted_norms = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row_sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) row_sum += s(i, j);
    weighted_norms += row_sum * row_norm[i];
  }
  return weighted_norms - cross;
}

void check_learner_inputs(const DenseMatrix& s, const HighOrderTargets& targets,
                          const DenseMatrix& x, const LearnerConfig& cfg) {
  cfg.validate();
  if (!s.is_square()) throw InvalidInput("structure loss: S must be square");
  if (targets.powers.size() != cfg.eta.size()) {
    throw InvalidInput("structure loss: target count != order");
  }
  for (const DenseMatrix& t : targets.powers) {
    if (!t.same_shape(s)) {
      throw InvalidInput("structure loss: target shape mismatch");
    }
  }
  if (x.rows() != s.rows()) {
    throw InvalidInput("structure loss: feature rows != n");
  }
}

// Shared core for loss/gradient: the gram matrix X X^T is precomputed by
// learn_structure, so both entry points take it explicitly.
DenseMatrix grad_smooth_impl(const DenseMatrix& s,
                             const HighOrderTargets& targets,
                             const DenseMatrix& x_gram, const DenseMatrix& x,
                             const std::vector<int>& labels,
                             std::span<const std::size_t> mask,
                             const GcnParams& params,
                             const LearnerConfig& cfg) {
  const NormalizedAdjacency na = normalize_adjacency(s);
  const std::size_t n = s.rows();

  // Terms that flow through S^: fidelity and the GNN loss.
  DenseMatrix grad_hat(n, n, 0.0);
  for (std::size_t k = 0; k < cfg.eta.size(); ++k) {
    if (cfg.eta[k] == 0.0) continue;
    const double w = 2.0 * cfg.eta[k];
    const DenseMatrix& target = targets.powers[k];
    for (std::size_t idx = 0; idx < grad_hat.size(); ++idx) {
      grad_hat.data()[idx] +=
          w * (na.matrix.data()[idx] - target.data()[idx]);
    }
  }
  {
    const GcnOutput out = gcn_forward(na, x, params);
    const GcnGradients gnn = gcn_backward(out.cache, labels, mask);
    grad_hat += gnn.s_hat;
  }

  // Chain rule through S^ = D^{-1/2} (S + I) D^{-1/2} with D frozen.
  std::vector<double> inv_sqrt(n);
  for (std::size_t i = 0; i < n; ++i) inv_sqrt[i] = 1.0 / std::sqrt(na.degree[i]);
  DenseMatrix grad(n, n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      grad(i, j) = grad_hat(i, j) * inv_sqrt[i] * inv_sqrt[j];
    }
  }

  // The smoothness term is affine in the degrees, so its gradient is exact:
  // d/dS_ij tr(X^T L(S) X) = |x_i|^2 - <x_i, x_j>.
  if (cfg.lambda > 0.0) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        grad(i, j) += cfg.lambda * (x_gram(i, i) - x_gram(i, j));
      }
    }
  }
  return symmetrized(grad);
}

}  // namespace

LossComponents structure_loss(const DenseMatrix& s,
                              const HighOrderTargets& targets,
                              const DenseMatrix& x,
                              const std::vector<int>& labels,
                              std::span<const std::size_t> mask,
                              const GcnParams& params,
                              const LearnerConfig& cfg) {
  check_learner_inputs(s, targets, x, cfg);
  const NormalizedAdjacency na = normalize_adjacency(s);

  LossComponents out;
  out.l1 = cfg.alpha * l1_norm(s);
  out.nuclear = cfg.beta == 0.0 ? 0.0 : cfg.beta * nuclear_norm(s);
  for (std::size_t k = 0; k < cfg.eta.size(); ++k) {
    const DenseMatrix diff = na.matrix - targets.powers[k];
    out.fidelity.push_back(cfg.eta[k] * frobenius_norm(diff) *
                           frobenius_norm(diff));
  }
  out.smooth = cfg.lambda * smoothness_quadratic(s, x);
  const GcnOutput fwd = gcn_forward(na, x, params);
  out.gnn = masked_cross_entropy(fwd.probabilities, labels, mask);

  out.total = out.l1 + out.nuclear + out.smooth + out.gnn;
  for (double f : out.fidelity) out.total += f;
  return out;
}

DenseMatrix grad_structure_smooth(const DenseMatrix& s,
                                  const HighOrderTargets& targets,
                                  const DenseMatrix& x,
                                  const std::vector<int>& labels,
                                  std::span<const std::size_t> mask,
                                  const GcnParams& params,
                                  const LearnerConfig& cfg) {
  check_learner_inputs(s, targets, x, cfg);
  const DenseMatrix x_gram =
      cfg.lambda > 0.0 ? matmul(x, x.transposed()) : DenseMatrix(s.rows(),
                                                                 s.rows(), 0.0);
  return grad_smooth_impl(s, targets, x_gram, x, labels, mask, params, cfg);
}

ProxWeights scaled_prox_weights(const LearnerConfig& cfg, double lr_s) {
  if (!(lr_s > 0.0)) throw InvalidInput("scaled_prox_weights: lr_s must be > 0");
  return {cfg.alpha * lr_s, cfg.beta * lr_s};
}

namespace {

void project_box(DenseMatrix& s) {
  const std::size_t n = s.rows();
  for (double& v : s.data()) v = std::clamp(v, 0.0, 1.0);
  for (std::size_t i = 0; i < n; ++i) s(i, i) = 0.0;
  // Mirror the upper triangle so symmetry holds exactly.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = 0.5 * (s(i, j) + s(j, i));
      s(i, j) = v;
      s(j, i) = v;
    }
  }
}

}  // namespace

DenseMatrix prox_structure_step(const DenseMatrix& s, double alpha_eff,
                                double beta_eff) {
  DenseMatrix out = prox_nuclear(s, beta_eff);
  if (alpha_eff > 0.0) out = soft_threshold(out, alpha_eff);
  project_box(out);
  return out;
}

namespace {

void check_feasible(const DenseMatrix& s, int iteration) {
  for (double v : s.data()) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw NumericError("learn_structure: box violation at iteration " +
                         std::to_string(iteration));
    }
  }
  for (std::size_t i = 0; i < s.rows(); ++i) {
    if (s(i, i) != 0.0) {
      throw NumericError("learn_structure: diagonal violation at iteration " +
                         std::to_string(iteration));
    }
  }
  if (max_asymmetry(s) > tol::kGraphSymmetry) {
    throw NumericError("learn_structure: symmetry violation at iteration " +
                       std::to_string(iteration));
  }
}

}  // namespace

LearnedStructure learn_structure(const Graph& poisoned, const SplitMask& split,
                                 const LearnerConfig& cfg,
                                 const TrainConfig& train_cfg) {
  cfg.validate();
  poisoned.validate();
  if (!poisoned.labels) {
    throw InvalidInput("learn_structure: graph has no labels");
  }
  if (split.train.empty() || split.val.empty()) {
    throw InvalidInput("learn_structure: train and val masks required");
  }

  const DenseMatrix x = poisoned.effective_features();
  const std::vector<int>& labels = *poisoned.labels;
  const std::size_t classes = static_cast<std::size_t>(poisoned.class_count);

  const NormalizedAdjacency a_hat = normalize_adjacency(poisoned);
  const HighOrderTargets targets = make_high_order_targets(a_hat, cfg.order());
  const DenseMatrix x_gram =
      cfg.lambda > 0.0 ? matmul(x, x.transposed())
                       : DenseMatrix(poisoned.n, poisoned.n, 0.0);

  TrainConfig inner_cfg = train_cfg;
  inner_cfg.lr = cfg.lr_gnn;
  inner_cfg.seed = cfg.seed;
  GcnTrainer trainer(
      init_gcn_params(x.cols(), inner_cfg.hidden, classes, cfg.seed),
      inner_cfg);

  const ProxWeights prox = scaled_prox_weights(cfg, cfg.lr_s);

  DenseMatrix s = poisoned.adjacency;
  LearnedStructure result;
  result.best_val_accuracy = -1.0;
  result.s = s;
  result.params = trainer.params();

  for (int iter = 0; iter < cfg.outer_iters; ++iter) {
    try {
      const DenseMatrix grad =
          grad_smooth_impl(s, targets, x_gram, x, labels, split.train,
                           trainer.params(), cfg);
      s -= grad * cfg.lr_s;
      s = prox_structure_step(s, prox.alpha_eff, prox.beta_eff);
      require_finite(s, "learn_structure S");
    } catch (const NumericError& e) {
      throw NumericError(std::string(e.what()) + " (outer iteration " +
                         std::to_string(iter) + ")");
    }
    check_feasible(s, iter);

    const NormalizedAdjacency na = normalize_adjacency(s);
    for (int i = 0; i < cfg.tau; ++i) {
      const double loss =
          trainer.step(na.matrix, x, labels, split.train, false);
      if (!std::isfinite(loss)) {
        throw NumericError("learn_structure: GNN loss diverged at iteration " +
                           std::to_string(iter));
      }
    }

    LossComponents comps = structure_loss(s, targets, x, labels, split.train,
                                          trainer.params(), cfg);
    if (!std::isfinite(comps.total)) {
      throw NumericError("learn_structure: loss diverged at iteration " +
                         std::to_string(iter));
    }
    result.loss_trace.push_back(std::move(comps));
    result.iterations_run = iter + 1;

    const GcnOutput eval = gcn_forward(na, x, trainer.params());
    const double val_acc = accuracy(eval.probabilities, labels, split.val);
    if (val_acc > result.best_val_accuracy) {
      result.best_val_accuracy = val_acc;
      result.best_iteration = iter;
      result.s = s;
      result.params = trainer.params();
    } else if (iter - result.best_iteration >= cfg.patience) {
      break;
    }
  }
  return result;
}

}  // namespace hosl
