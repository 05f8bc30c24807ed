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

#include "hosl/gcn.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "hosl/error.hpp"
#include "hosl/tolerances.hpp"

namespace hosl {
namespace {

void softmax_rows(DenseMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    double peak = m(i, 0);
    for (std::size_t j = 1; j < m.cols(); ++j) peak = std::max(peak, m(i, j));
    double sum = 0.0;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const double e = std::exp(m(i, j) - peak);
      m(i, j) = e;
      sum += e;
    }
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) /= sum;
  }
}

void apply_dropout(DenseMatrix& m, double p, std::mt19937_64& rng) {
  if (p <= 0.0) return;
  std::bernoulli_distribution drop(p);
  const double scale = 1.0 / (1.0 - p);
  for (double& v : m.data()) {
    v = drop(rng) ? 0.0 : v * scale;
  }
}

GcnOutput forward_impl(const DenseMatrix& s_hat, const DenseMatrix& x,
                       const GcnParams& params, double dropout,
                       std::mt19937_64* rng) {
  if (s_hat.rows() != s_hat.cols() || s_hat.rows() != x.rows()) {
    throw InvalidInput("gcn_forward: aggregation/feature shape mismatch");
  }
  if (params.w1.rows() != x.cols()) {
    throw InvalidInput("gcn_forward: w1 rows != feature count");
  }
  if (params.w2.rows() != params.w1.cols()) {
    throw InvalidInput("gcn_forward: w2 rows != w1 cols");
  }

  GcnOutput out;
  GcnCache& cache = out.cache;
  cache.s_hat = s_hat;
  cache.x = x;
  if (rng != nullptr) apply_dropout(cache.x, dropout, *rng);

  cache.p1 = matmul(s_hat, cache.x);
  DenseMatrix z1 = matmul(cache.p1, params.w1);
  cache.relu_active.assign(z1.size(), 0);
  {
    auto data = z1.data();
    for (std::size_t k = 0; k < data.size(); ++k) {
      if (data[k] > 0.0) {
        cache.relu_active[k] = 1;
      } else {
        data[k] = 0.0;
      }
    }
  }
  cache.h1 = std::move(z1);
  if (rng != nullptr) apply_dropout(cache.h1, dropout, *rng);

  cache.p2 = matmul(s_hat, cache.h1);
  out.logits = matmul(cache.p2, params.w2);
  out.probabilities = out.logits;
  softmax_rows(out.probabilities);
  cache.probs = out.probabilities;
  cache.w1 = params.w1;
  cache.w2 = params.w2;
  return out;
}

void check_mask(const DenseMatrix& probabilities, const std::vector<int>& labels,
                std::span<const std::size_t> mask, const char* who) {
  if (mask.empty()) throw InvalidInput(std::string(who) + ": empty mask");
  if (labels.size() != probabilities.rows()) {
    throw InvalidInput(std::string(who) + ": label count mismatch");
  }
  for (std::size_t i : mask) {
    if (i >= probabilities.rows()) {
      throw InvalidInput(std::string(who) + ": mask index out of range");
    }
    if (labels[i] < 0 ||
        static_cast<std::size_t>(labels[i]) >= probabilities.cols()) {
      throw InvalidInput(std::string(who) + ": label out of range");
    }
  }
}

}  // namespace

GcnParams init_gcn_params(std::size_t in_features, std::size_t hidden,
                          std::size_t classes, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto glorot = [&rng](std::size_t rows, std::size_t cols) {
    const double bound =
        std::sqrt(6.0 / static_cast<double>(rows + cols));
    std::uniform_real_distribution<double> dist(-bound, bound);
    DenseMatrix m(rows, cols, 0.0);
    for (double& v : m.data()) v = dist(rng);
    return m;
  };
  GcnParams params;
  params.w1 = glorot(in_features, hidden);
  params.w2 = glorot(hidden, classes);
  params.hidden = hidden;
  return params;
}

GcnOutput gcn_forward(const NormalizedAdjacency& s_hat, const DenseMatrix& x,
                      const GcnParams& params) {
  return forward_impl(s_hat.matrix, x, params, 0.0, nullptr);
}

double masked_cross_entropy(const DenseMatrix& probabilities,
                            const std::vector<int>& labels,
                            std::span<const std::size_t> mask) {
  check_mask(probabilities, labels, mask, "masked_cross_entropy");
  double total = 0.0;
  for (std::size_t i : mask) {
    const double p = std::max(
        probabilities(i, static_cast<std::size_t>(labels[i])), tol::kLogClamp);
    total -= std::log(p);
  }
  return total / static_cast<double>(mask.size());
}

GcnGradients gcn_backward(const GcnCache& cache, const std::vector<int>& labels,
                          std::span<const std::size_t> mask) {
  check_mask(cache.probs, labels, mask, "gcn_backward");
  if (cache.relu_active.size() != cache.h1.size() ||
      cache.p2.rows() != cache.probs.rows()) {
    throw InvalidInput("gcn_backward: stale or inconsistent cache");
  }

  const std::size_t n = cache.probs.rows();
  const std::size_t c = cache.probs.cols();
  const double inv_mask = 1.0 / static_cast<double>(mask.size());

  // d logits: (p - onehot(y)) / |mask| on masked rows.
  DenseMatrix dlogits(n, c, 0.0);
  for (std::size_t i : mask) {
    for (std::size_t j = 0; j < c; ++j) {
      dlogits(i, j) = cache.probs(i, j) * inv_mask;
    }
    dlogits(i, static_cast<std::size_t>(labels[i])) -= inv_mask;
  }

  GcnGradients grads;
  grads.w2 = matmul(cache.p2.transposed(), dlogits);
  const DenseMatrix dp2 = matmul(dlogits, cache.w2.transposed());

  // First appearance of the aggregation matrix: p2 = s_hat * h1.
  grads.s_hat = matmul(dp2, cache.h1.transposed());

  DenseMatrix dh1 = matmul(cache.s_hat.transposed(), dp2);
  {
    auto data = dh1.data();
    for (std::size_t k = 0; k < data.size(); ++k) {
      if (!cache.relu_active[k]) data[k] = 0.0;
    }
  }
  grads.w1 = matmul(cache.p1.transposed(), dh1);
  const DenseMatrix dp1 = matmul(dh1, cache.w1.transposed());

  // Second appearance: p1 = s_hat * x.
  grads.s_hat += matmul(dp1, cache.x.transposed());
  return grads;
}

double accuracy(const DenseMatrix& probabilities,
                const std::vector<int>& labels,
                std::span<const std::size_t> mask) {
  check_mask(probabilities, labels, mask, "accuracy");
  std::size_t hits = 0;
  for (std::size_t i : mask) {
    std::size_t arg = 0;
    for (std::size_t j = 1; j < probabilities.cols(); ++j) {
      if (probabilities(i, j) > probabilities(i, arg)) arg = j;
    }
    if (static_cast<int>(arg) == labels[i]) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(mask.size());
}

GcnTrainer::GcnTrainer(GcnParams params, const TrainConfig& cfg)
    : params_(std::move(params)),
      cfg_(cfg),
      m_w1_(params_.w1.rows(), params_.w1.cols(), 0.0),
      v_w1_(params_.w1.rows(), params_.w1.cols(), 0.0),
      m_w2_(params_.w2.rows(), params_.w2.cols(), 0.0),
      v_w2_(params_.w2.rows(), params_.w2.cols(), 0.0),
      dropout_rng_(cfg.seed ^ 0x9e3779b97f4a7c15ULL) {}

double GcnTrainer::step(const DenseMatrix& s_hat, const DenseMatrix& x,
                        const std::vector<int>& labels,
                        std::span<const std::size_t> train_mask,
                        bool use_dropout) {
  GcnOutput out =
      use_dropout && cfg_.dropout > 0.0
          ? forward_impl(s_hat, x, params_, cfg_.dropout, &dropout_rng_)
          : forward_impl(s_hat, x, params_, 0.0, nullptr);
  const double loss = masked_cross_entropy(out.probabilities, labels,
                                           train_mask);
  GcnGradients grads = gcn_backward(out.cache, labels, train_mask);

  // L2 regularization on the first layer only.
  if (cfg_.weight_decay > 0.0) {
    auto g = grads.w1.data();
    auto w = params_.w1.data();
    for (std::size_t k = 0; k < g.size(); ++k) g[k] += cfg_.weight_decay * w[k];
  }

  ++step_count_;
  if (cfg_.adaptive) {
    constexpr double kBeta1 = 0.9;
    constexpr double kBeta2 = 0.999;
    constexpr double kEps = 1e-8;
    const double bc1 = 1.0 - std::pow(kBeta1, step_count_);
    const double bc2 = 1.0 - std::pow(kBeta2, step_count_);
    auto adam = [&](DenseMatrix& w, const DenseMatrix& g, DenseMatrix& m,
                    DenseMatrix& v) {
      auto wd = w.data();
      auto gd = g.data();
      auto md = m.data();
      auto vd = v.data();
      for (std::size_t k = 0; k < wd.size(); ++k) {
        md[k] = kBeta1 * md[k] + (1.0 - kBeta1) * gd[k];
        vd[k] = kBeta2 * vd[k] + (1.0 - kBeta2) * gd[k] * gd[k];
        wd[k] -= cfg_.lr * (md[k] / bc1) / (std::sqrt(vd[k] / bc2) + kEps);
      }
    };
    adam(params_.w1, grads.w1, m_w1_, v_w1_);
    adam(params_.w2, grads.w2, m_w2_, v_w2_);
  } else {
    params_.w1 -= grads.w1 * cfg_.lr;
    params_.w2 -= grads.w2 * cfg_.lr;
  }
  return loss;
}

TrainResult train_gcn(const NormalizedAdjacency& s_hat, const DenseMatrix& x,
                      const std::vector<int>& labels, const SplitMask& split,
                      const TrainConfig& cfg) {
  if (split.train.empty()) throw InvalidInput("train_gcn: empty train mask");
  const std::size_t classes =
      static_cast<std::size_t>(
          *std::max_element(labels.begin(), labels.end())) + 1;
  GcnTrainer trainer(
      init_gcn_params(x.cols(), cfg.hidden, classes, cfg.seed), cfg);

  TrainResult result;
  result.history.best_val_accuracy = -1.0;
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    const double loss =
        trainer.step(s_hat.matrix, x, labels, split.train, true);
    if (!std::isfinite(loss)) {
      throw NumericError("train_gcn: loss diverged at epoch " +
                         std::to_string(epoch));
    }
    result.history.train_loss.push_back(loss);

    const GcnOutput eval = gcn_forward(s_hat, x, trainer.params());
    require_finite(eval.probabilities, "train_gcn probabilities");
    const double val_acc =
        split.val.empty() ? 0.0 : accuracy(eval.probabilities, labels,
                                           split.val);
    result.history.val_accuracy.push_back(val_acc);
    if (val_acc > result.history.best_val_accuracy) {
      result.history.best_val_accuracy = val_acc;
      result.history.best_epoch = epoch;
      result.params = trainer.params();
    }
  }
  if (result.history.best_epoch < 0) result.params = trainer.params();
  return result;
}

TrainResult train_gcn(const Graph& g, const SplitMask& split,
                      const TrainConfig& cfg) {
  if (!g.labels) throw InvalidInput("train_gcn: graph has no labels");
  return train_gcn(normalize_adjacency(g), g.effective_features(), *g.labels,
                   split, cfg);
}

}  // namespace hosl
