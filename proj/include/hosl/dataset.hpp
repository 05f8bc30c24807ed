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

#ifndef HOSL_DATASET_HPP_
#define HOSL_DATASET_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hosl/graph.hpp"

namespace hosl {

// Disjoint train/validation/test node index sets.
struct SplitMask {
  std::vector<std::size_t> train;
  std::vector<std::size_t> val;
  std::vector<std::size_t> test;
};

// Stochastic block model with deterministic class-prototype features
//   x_i = noise_p * onehot(y_i) + ((1 - noise_p) / classes) * 1.
struct SbmConfig {
  std::size_t n = 0;
  int classes = 2;
  double p_in = 0.1;
  double p_out = 0.01;
  double noise_p = 0.9;
  bool self_loop_homophily = true;  // convention used by the homophily check
  std::uint64_t seed = 0;
};

struct LoadReport {
  Graph graph;
  std::size_t dropped_self_loops = 0;
  std::size_t duplicate_edges = 0;
};

// Reads a whitespace-separated edge list (`u v` or `u v w` per line, 0-based
// indices, '#' comments and blank lines skipped). Optional sidecars: a dense
// CSV feature matrix (one row per node) and a label file (one integer per
// line). Duplicate edges collapse, self-loops are dropped and counted.
// Node count is max(n_hint, sidecar row count, max index + 1); an index at
// or beyond an externally fixed count is rejected.
LoadReport load_edge_list(const std::string& edges_path,
                          std::optional<std::size_t> n_hint = std::nullopt,
                          const std::optional<std::string>& features_path =
                              std::nullopt,
                          const std::optional<std::string>& labels_path =
                              std::nullopt);

// Canonical save: edge list (3 columns with full-precision weights when the
// graph is weighted), features CSV and labels file when present. Reloading
// reproduces the graph bit-exactly.
void save_graph(const Graph& g, const std::string& edges_path,
                const std::optional<std::string>& features_path = std::nullopt,
                const std::optional<std::string>& labels_path = std::nullopt);

Graph generate_sbm(const SbmConfig& cfg);

// Expected homophilous-neighbor fraction of class `c` under the model.
double sbm_expected_homophily(const SbmConfig& cfg, int c);

// Uniform random partition: floor(n * ratio) nodes for train and val, the
// remainder to test when the ratios sum to 1 (floor otherwise).
SplitMask make_split(std::size_t n, std::array<double, 3> ratios,
                     std::uint64_t seed);
SplitMask make_split(std::size_t n, std::uint64_t seed);  // 10/10/80

// Restriction of g to its largest connected component (node order kept).
Graph largest_connected_component(const Graph& g);

}  // namespace hosl

#endif  // HOSL_DATASET_HPP_
