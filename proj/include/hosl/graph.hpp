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

#ifndef HOSL_GRAPH_HPP_
#define HOSL_GRAPH_HPP_

#include <cstddef>
#include <optional>
#include <vector>

#include "hosl/matrix.hpp"

namespace hosl {

// Undirected weighted graph. Adjacency entries lie in [0,1], the diagonal is
// exactly zero (self-loops are added by normalization, never stored), and the
// matrix is symmetric within tol::kGraphSymmetry.
struct Graph {
  std::size_t n = 0;
  DenseMatrix adjacency;
  std::optional<DenseMatrix> features;   // n x F
  std::optional<std::vector<int>> labels;  // values in [0, class_count)
  int class_count = 0;

  // Throws InvalidInput when any structural invariant is violated.
  void validate() const;

  std::size_t edge_count() const;  // nonzero upper-triangle entries
  bool is_binary() const;          // all weights exactly 0 or 1
  // Node degree counting nonzero incident weights (no self-loop).
  std::size_t degree(std::size_t i) const;
  // Features if present, otherwise the identity matrix (featureless
  // datasets are handled with X = I throughout).
  DenseMatrix effective_features() const;
};

// Builds a validated Graph from parts.
Graph make_graph(DenseMatrix adjacency,
                 std::optional<DenseMatrix> features = std::nullopt,
                 std::optional<std::vector<int>> labels = std::nullopt,
                 int class_count = 0);

// D^{-1/2} (W + I) D^{-1/2} with D the diagonal of row sums of W + I.
// `degree` keeps those row sums. Spectrum lies in [-1, 1] with 1 attained.
struct NormalizedAdjacency {
  DenseMatrix matrix;
  std::vector<double> degree;
};

// Throws InvalidInput on negative weights or asymmetry.
NormalizedAdjacency normalize_adjacency(const DenseMatrix& weights);
NormalizedAdjacency normalize_adjacency(const Graph& g);

// L = D - (A + I), row sums zero, positive semi-definite.
DenseMatrix graph_laplacian(const Graph& g);

// I - normalized adjacency; eigenvalues in [0, 2].
DenseMatrix normalized_laplacian(const Graph& g);
DenseMatrix normalized_laplacian(const NormalizedAdjacency& na);

// k-th matrix power by repeated multiplication, k >= 1.
DenseMatrix normalized_power(const NormalizedAdjacency& na, int k);

// Average feature smoothness: the adjacency-weighted mean of squared feature
// distances over ordered node pairs (self-loops included in the weight mass).
// Computed through the Laplacian quadratic form; agrees with the direct
// double sum to rounding. `adjacency_override` swaps in another weight
// matrix (e.g. a learned structure) while keeping the graph's features.
double feature_smoothness(const Graph& g,
                          const DenseMatrix* adjacency_override = nullptr);

// Per-node smoothness: row-normalized weighted mean of squared feature
// distances from node i (self-loop contributes weight but zero distance).
double local_smoothness(const Graph& g, std::size_t i);

struct SmoothnessReport {
  double global = 0.0;
  std::vector<double> per_node;
  double perturbation_rate = 0.0;
};

SmoothnessReport smoothness_report(const Graph& g,
                                   double perturbation_rate = 0.0);

// Fraction of node i's neighborhood mass that is same-class, with the
// self-loop counted per `include_self_loop`. Requires labels.
double homophily_fraction(const Graph& g, std::size_t i,
                          bool include_self_loop = true);

// Full spectrum diagnostics of a normalized adjacency.
struct SpectralReport {
  std::vector<double> eigenvalues;  // descending
  double max_abs = 0.0;
  bool in_unit_interval = false;    // all |lambda| <= 1 + tol
  bool unit_eigenvalue = false;     // max lambda == 1 within tol
  bool power_contraction = false;   // |lambda^k| <= |lambda| + tol, k = 2,3
};

SpectralReport spectral_check(const NormalizedAdjacency& na);

// tr(L - L2) where L2 is the 2-order Laplacian D - (A+I) D_0^{-1} (A+I)
// with D_0 the self-loop-free degrees (path-count convention; isolated
// nodes fall back to the self-loop degree 1 and are flagged).
// For binary graphs without isolated nodes this equals sum_i 1/d_i.
struct TraceGapReport {
  double direct = 0.0;       // tr(L - L2) from the matrices
  double closed_form = 0.0;  // sum over non-isolated nodes of 1/d_i
  std::size_t isolated_nodes = 0;
};

// Requires a binary graph.
TraceGapReport trace_gap(const Graph& g);

}  // namespace hosl

#endif  // HOSL_GRAPH_HPP_
