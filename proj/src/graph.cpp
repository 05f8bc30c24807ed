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

#include "hosl/graph.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "hosl/eigen_sym.hpp"
#include "hosl/error.hpp"
#include "hosl/tolerances.hpp"

namespace hosl {

void Graph::validate() const {
  if (adjacency.rows() != n || adjacency.cols() != n) {
    throw InvalidInput("Graph: adjacency must be n x n");
  }
  if (n > 0 && max_asymmetry(adjacency) > tol::kGraphSymmetry) {
    throw InvalidInput("Graph: adjacency not symmetric within tolerance");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (adjacency(i, i) != 0.0) {
      throw InvalidInput("Graph: nonzero diagonal at node " +
                         std::to_string(i));
    }
    for (std::size_t j = 0; j < n; ++j) {
      const double w = adjacency(i, j);
      if (!(w >= 0.0 && w <= 1.0)) {
        throw InvalidInput("Graph: weight outside [0,1] at (" +
                           std::to_string(i) + "," + std::to_string(j) + ")");
      }
    }
  }
  if (features && features->rows() != n) {
    throw InvalidInput("Graph: feature row count != n");
  }
  if (labels) {
    if (labels->size() != n) throw InvalidInput("Graph: label count != n");
    for (int y : *labels) {
      if (y < 0 || y >= class_count) {
        throw InvalidInput("Graph: label outside [0, class_count)");
      }
    }
  }
}

std::size_t Graph::edge_count() const {
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (adjacency(i, j) != 0.0) ++count;
    }
  }
  return count;
}

bool Graph::is_binary() const {
  for (double w : adjacency.data()) {
    if (w != 0.0 && w != 1.0) return false;
  }
  return true;
}

std::size_t Graph::degree(std::size_t i) const {
  std::size_t d = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (adjacency(i, j) != 0.0) ++d;
  }
  return d;
}

DenseMatrix Graph::effective_features() const {
  if (features) return *features;
  return DenseMatrix::identity(n);
}

Graph make_graph(DenseMatrix adjacency, std::optional<DenseMatrix> features,
                 std::optional<std::vector<int>> labels, int class_count) {
  Graph g;
  g.n = adjacency.rows();
  g.adjacency = std::move(adjacency);
  g.features = std::move(features);
  g.labels = std::move(labels);
  g.class_count = class_count;
  g.validate();
  return g;
}

NormalizedAdjacency normalize_adjacency(const DenseMatrix& weights) {
  if (!weights.is_square()) {
    throw InvalidInput("normalize_adjacency: matrix is not square");
  }
  if (max_asymmetry(weights) > tol::kSymmetryCheck) {
    throw InvalidInput("normalize_adjacency: matrix is not symmetric");
  }
  const std::size_t n = weights.rows();
  NormalizedAdjacency na;
  na.degree.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double sum = 1.0;  // self-loop
    for (std::size_t j = 0; j < n; ++j) {
      const double w = weights(i, j);
      if (w < 0.0) {
        throw InvalidInput("normalize_adjacency: negative weight at row " +
                           std::to_string(i));
      }
      sum += w;
    }
    na.degree[i] = sum;
  }
  std::vector<double> inv_sqrt(n);
  for (std::size_t i = 0; i < n; ++i) inv_sqrt[i] = 1.0 / std::sqrt(na.degree[i]);

  na.matrix = DenseMatrix(n, n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double w = weights(i, j) + (i == j ? 1.0 : 0.0);
      na.matrix(i, j) = inv_sqrt[i] * w * inv_sqrt[j];
    }
  }
  require_finite(na.matrix, "normalize_adjacency");
  return na;
}

NormalizedAdjacency normalize_adjacency(const Graph& g) {
  return normalize_adjacency(g.adjacency);
}

DenseMatrix graph_laplacian(const Graph& g) {
  const std::size_t n = g.n;
  DenseMatrix lap(n, n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double deg = 1.0;  // self-loop
    for (std::size_t j = 0; j < n; ++j) deg += g.adjacency(i, j);
    for (std::size_t j = 0; j < n; ++j) {
      lap(i, j) = -(g.adjacency(i, j) + (i == j ? 1.0 : 0.0));
    }
    lap(i, i) += deg;
  }
  return lap;
}

DenseMatrix normalized_laplacian(const NormalizedAdjacency& na) {
  DenseMatrix lap = na.matrix;
  lap *= -1.0;
  for (std::size_t i = 0; i < lap.rows(); ++i) lap(i, i) += 1.0;
  return lap;
}

DenseMatrix normalized_laplacian(const Graph& g) {
  return normalized_laplacian(normalize_adjacency(g));
}

DenseMatrix normalized_power(const NormalizedAdjacency& na, int k) {
  if (k < 1) throw InvalidInput("normalized_power: k must be >= 1");
  DenseMatrix out = na.matrix;
  for (int i = 1; i < k; ++i) out = matmul(out, na.matrix);
  return out;
}

namespace {

// Weighted Laplacian quadratic form tr(X^T L X) for L built from `weights`
// with self-loops added. Doubled so it equals the ordered-pair double sum
// sum_ij w_ij |x_i - x_j|^2 (the self-loop terms vanish).
double laplacian_quadratic_doubled(const DenseMatrix& weights,
                                   const DenseMatrix& x) {
  const std::size_t n = weights.rows();
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double w = weights(i, j);
      if (w == 0.0) continue;
      double dist2 = 0.0;
      for (std::size_t f = 0; f < x.cols(); ++f) {
        const double d = x(i, f) - x(j, f);
        dist2 += d * d;
      }
      total += 2.0 * w * dist2;
    }
  }
  return total;
}

double self_loop_weight_mass(const DenseMatrix& weights) {
  double mass = static_cast<double>(weights.rows());  // self-loops
  for (double w : weights.data()) mass += std::abs(w);
  return mass;
}

}  // namespace

double feature_smoothness(const Graph& g,
                          const DenseMatrix* adjacency_override) {
  if (!g.features) {
    throw InvalidInput("feature_smoothness: graph has no features");
  }
  const DenseMatrix& weights =
      adjacency_override != nullptr ? *adjacency_override : g.adjacency;
  if (weights.rows() != g.n || weights.cols() != g.n) {
    throw InvalidInput("feature_smoothness: override has wrong shape");
  }
  const double mass = self_loop_weight_mass(weights);
  if (mass == 0.0) return 0.0;
  return laplacian_quadratic_doubled(weights, *g.features) / mass;
}

double local_smoothness(const Graph& g, std::size_t i) {
  if (!g.features) {
    throw InvalidInput("local_smoothness: graph has no features");
  }
  if (i >= g.n) throw InvalidInput("local_smoothness: node index out of range");
  const DenseMatrix& x = *g.features;
  double row_mass = 1.0;  // self-loop
  double total = 0.0;
  for (std::size_t j = 0; j < g.n; ++j) {
    const double w = g.adjacency(i, j);
    if (w == 0.0) continue;
    row_mass += w;
    double dist2 = 0.0;
    for (std::size_t f = 0; f < x.cols(); ++f) {
      const double d = x(i, f) - x(j, f);
      dist2 += d * d;
    }
    total += w * dist2;
  }
  return total / row_mass;
}

SmoothnessReport smoothness_report(const Graph& g, double perturbation_rate) {
  SmoothnessReport report;
  report.global = feature_smoothness(g);
  report.per_node.resize(g.n);
  for (std::size_t i = 0; i < g.n; ++i) {
    report.per_node[i] = local_smoothness(g, i);
  }
  report.perturbation_rate = perturbation_rate;
  return report;
}

double homophily_fraction(const Graph& g, std::size_t i,
                          bool include_self_loop) {
  if (!g.labels) throw InvalidInput("homophily_fraction: graph has no labels");
  if (i >= g.n) throw InvalidInput("homophily_fraction: index out of range");
  const std::vector<int>& y = *g.labels;
  double same = include_self_loop ? 1.0 : 0.0;
  double mass = include_self_loop ? 1.0 : 0.0;
  for (std::size_t j = 0; j < g.n; ++j) {
    const double w = g.adjacency(i, j);
    if (w == 0.0) continue;
    mass += w;
    if (y[j] == y[i]) same += w;
  }
  if (mass == 0.0) return 0.0;
  return same / mass;
}

SpectralReport spectral_check(const NormalizedAdjacency& na) {
  SpectralReport report;
  const SymmetricEigen eig = sym_eigen(na.matrix);
  report.eigenvalues = eig.eigenvalues;
  for (double lambda : report.eigenvalues) {
    report.max_abs = std::max(report.max_abs, std::abs(lambda));
  }
  report.in_unit_interval = report.max_abs <= 1.0 + tol::kEigenRange;
  report.unit_eigenvalue =
      !report.eigenvalues.empty() &&
      std::abs(report.eigenvalues.front() - 1.0) <= tol::kEigenRange;
  report.power_contraction = true;
  for (double lambda : report.eigenvalues) {
    for (int k = 2; k <= 3; ++k) {
      if (std::abs(std::pow(lambda, k)) >
          std::abs(lambda) + tol::kPowerContraction) {
        report.power_contraction = false;
      }
    }
  }
  return report;
}

TraceGapReport trace_gap(const Graph& g) {
  if (!g.is_binary()) {
    throw InvalidInput("trace_gap: requires a binary graph");
  }
  TraceGapReport report;
  const std::size_t n = g.n;

  // Self-looped adjacency and the path-count degrees. Isolated nodes take
  // the self-loop degree 1 so the middle inverse stays defined.
  std::vector<double> path_degree(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t d = g.degree(i);
    if (d == 0) {
      ++report.isolated_nodes;
      path_degree[i] = 1.0;
    } else {
      path_degree[i] = static_cast<double>(d);
      report.closed_form += 1.0 / static_cast<double>(d);
    }
  }

  // tr(L - L2) = tr(A~ D0^{-1} A~) - tr(A~), with A~ = A + I.
  double direct = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double w = g.adjacency(i, j) + (i == j ? 1.0 : 0.0);
      direct += w * w / path_degree[j];
    }
    direct -= 1.0;  // tr(A~) contribution of node i
  }
  report.direct = direct;
  return report;
}

}  // namespace hosl
