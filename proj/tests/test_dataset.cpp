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

#include "hosl/dataset.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <string>

#include "hosl/error.hpp"
#include "hosl/graph.hpp"
#include "support/test_util.hpp"

using hosl::DenseMatrix;
using hosl::Graph;
using hosl::SbmConfig;
using hosl::SplitMask;

namespace {

class TempDir {
 public:
  TempDir() {
    path_ = std::filesystem::temp_directory_path() /
            ("hosl_test_" + std::to_string(counter_++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  std::string file(const std::string& name) const {
    return (path_ / name).string();
  }

 private:
  std::filesystem::path path_;
  static inline int counter_ = 0;
};

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  out << content;
}

}  // namespace

TEST_CASE("edge list load: path graph") {
  TempDir dir;
  write_file(dir.file("g.edges"), "0 1\n1 2\n");
  const auto report = hosl::load_edge_list(dir.file("g.edges"));
  CHECK(report.graph.n == 3);
  CHECK(report.graph.edge_count() == 2);
  CHECK(report.dropped_self_loops == 0);
}

TEST_CASE("edge list load: duplicates collapse, self-loops counted") {
  TempDir dir;
  write_file(dir.file("g.edges"), "0 1\n1 0\n2 2\n");
  const auto report = hosl::load_edge_list(dir.file("g.edges"), 3);
  CHECK(report.graph.edge_count() == 1);
  CHECK(report.duplicate_edges == 1);
  CHECK(report.dropped_self_loops == 1);
}

TEST_CASE("edge list load: malformed line carries its number") {
  TempDir dir;
  write_file(dir.file("g.edges"), "0 1\nnot an edge\n");
  try {
    hosl::load_edge_list(dir.file("g.edges"));
    FAIL("expected ParseError");
  } catch (const hosl::ParseError& e) {
    CHECK(std::string(e.what()).find(":2") != std::string::npos);
  }
}

TEST_CASE("edge list load: index beyond the fixed node count") {
  TempDir dir;
  write_file(dir.file("g.edges"), "0 7\n");
  CHECK_THROWS_AS(hosl::load_edge_list(dir.file("g.edges"), 4),
                  hosl::InvalidInput);
}

TEST_CASE("edge list load: sidecars fix n and classes") {
  TempDir dir;
  write_file(dir.file("g.edges"), "0 1\n");
  write_file(dir.file("g.x"), "1.0,0.0\n0.0,1.0\n0.5,0.5\n");
  write_file(dir.file("g.y"), "0\n1\n1\n");
  const auto report = hosl::load_edge_list(dir.file("g.edges"), std::nullopt,
                                           dir.file("g.x"), dir.file("g.y"));
  CHECK(report.graph.n == 3);
  CHECK(report.graph.features->cols() == 2);
  CHECK(report.graph.class_count == 2);
}

TEST_CASE("save/load round trip is bit-exact, including weights") {
  TempDir dir;
  // Weighted graph with awkward values.
  DenseMatrix adj(3, 3, 0.0);
  adj(0, 1) = 1.0 / 3.0;
  adj(1, 0) = 1.0 / 3.0;
  adj(1, 2) = 0.12345678901234567;
  adj(2, 1) = 0.12345678901234567;
  DenseMatrix x = hosl::testing::random_matrix(3, 4, 5, 0.9);
  const Graph g = hosl::make_graph(std::move(adj), std::move(x),
                                   std::vector<int>{0, 1, 0}, 2);
  hosl::save_graph(g, dir.file("g.edges"), dir.file("g.x"), dir.file("g.y"));
  const auto loaded = hosl::load_edge_list(dir.file("g.edges"), std::nullopt,
                                           dir.file("g.x"), dir.file("g.y"));
  CHECK(hosl::testing::max_entry_diff(loaded.graph.adjacency, g.adjacency) ==
        0.0);
  CHECK(hosl::testing::max_entry_diff(*loaded.graph.features, *g.features) ==
        0.0);
  CHECK(*loaded.graph.labels == *g.labels);
}

TEST_CASE("sbm: disjoint cliques with zero local smoothness") {
  SbmConfig cfg;
  cfg.n = 4;
  cfg.classes = 2;
  cfg.p_in = 1.0;
  cfg.p_out = 0.0;
  cfg.noise_p = 0.9;
  cfg.seed = 1;
  const Graph g = hosl::generate_sbm(cfg);
  CHECK(g.edge_count() == 2);  // two 2-cliques
  for (std::size_t i = 0; i < g.n; ++i) {
    CHECK(hosl::local_smoothness(g, i) == doctest::Approx(0.0));
  }
}

TEST_CASE("sbm: noise_p = 1 gives exact one-hot features") {
  SbmConfig cfg;
  cfg.n = 6;
  cfg.classes = 2;
  cfg.p_in = 0.9;
  cfg.p_out = 0.05;
  cfg.noise_p = 1.0;
  cfg.seed = 3;
  const Graph g = hosl::generate_sbm(cfg);
  for (std::size_t i = 0; i < g.n; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      const double expected =
          static_cast<std::size_t>((*g.labels)[i]) == j ? 1.0 : 0.0;
      CHECK((*g.features)(i, j) == doctest::Approx(expected));
    }
  }
}

TEST_CASE("sbm: heterophilous pair feature distance is 2 p^2") {
  SbmConfig cfg;
  cfg.n = 10;
  cfg.classes = 2;
  cfg.p_in = 0.8;
  cfg.p_out = 0.1;
  cfg.noise_p = 0.6;
  cfg.seed = 4;
  const Graph g = hosl::generate_sbm(cfg);
  std::size_t i = 0;
  std::size_t j = g.n - 1;  // different blocks by construction
  REQUIRE((*g.labels)[i] != (*g.labels)[j]);
  double dist2 = 0.0;
  for (std::size_t f = 0; f < g.features->cols(); ++f) {
    const double d = (*g.features)(i, f) - (*g.features)(j, f);
    dist2 += d * d;
  }
  CHECK(dist2 == doctest::Approx(2.0 * cfg.noise_p * cfg.noise_p));
}

TEST_CASE("sbm: deterministic under seed") {
  SbmConfig cfg;
  cfg.n = 30;
  cfg.classes = 3;
  cfg.p_in = 0.4;
  cfg.p_out = 0.05;
  cfg.seed = 12;
  const Graph a = hosl::generate_sbm(cfg);
  const Graph b = hosl::generate_sbm(cfg);
  CHECK(hosl::testing::max_entry_diff(a.adjacency, b.adjacency) == 0.0);
}

TEST_CASE("sbm: configuration violating homophily is rejected") {
  SbmConfig cfg;
  cfg.n = 20;
  cfg.classes = 2;
  cfg.p_in = 0.2;
  cfg.p_out = 0.3;  // p_out >= p_in
  CHECK_THROWS_AS(hosl::generate_sbm(cfg), hosl::InvalidInput);
}

TEST_CASE("sbm: empirical homophily approaches the expectation") {
  SbmConfig cfg;
  cfg.n = 2000;
  cfg.classes = 2;
  cfg.p_in = 0.01;
  cfg.p_out = 0.002;
  cfg.noise_p = 0.9;
  cfg.seed = 99;
  const Graph g = hosl::generate_sbm(cfg);

  std::size_t homo = 0;
  std::size_t total = 0;
  for (std::size_t i = 0; i < g.n; ++i) {
    for (std::size_t j = i + 1; j < g.n; ++j) {
      if (g.adjacency(i, j) == 0.0) continue;
      ++total;
      if ((*g.labels)[i] == (*g.labels)[j]) ++homo;
    }
  }
  // Expected homophilous share of edges with equal blocks:
  // p_in (n/2 - 1) / (p_in (n/2 - 1) + p_out n/2), within 3 sigma binomial.
  const double block = static_cast<double>(cfg.n) / 2.0;
  const double expected = cfg.p_in * (block - 1.0) /
                          (cfg.p_in * (block - 1.0) + cfg.p_out * block);
  const double observed = static_cast<double>(homo) /
                          static_cast<double>(total);
  const double sigma = std::sqrt(expected * (1.0 - expected) /
                                 static_cast<double>(total));
  CHECK(std::abs(observed - expected) <= 3.0 * sigma);
}

TEST_CASE("split: exact tenths on n=10") {
  const SplitMask mask = hosl::make_split(10, 7);
  CHECK(mask.train.size() == 1);
  CHECK(mask.val.size() == 1);
  CHECK(mask.test.size() == 8);
}

TEST_CASE("split: deterministic under seed, disjoint, in range") {
  const SplitMask a = hosl::make_split(57, 5);
  const SplitMask b = hosl::make_split(57, 5);
  CHECK(a.train == b.train);
  CHECK(a.val == b.val);
  CHECK(a.test == b.test);

  std::set<std::size_t> seen;
  for (const auto* part : {&a.train, &a.val, &a.test}) {
    for (std::size_t i : *part) {
      CHECK(i < 57);
      CHECK(!seen.contains(i));
      seen.insert(i);
    }
  }
}

TEST_CASE("split: floor rounding with remainder to test at n=2708") {
  const SplitMask mask = hosl::make_split(2708, 1);
  CHECK(mask.train.size() == 270);
  CHECK(mask.val.size() == 270);
  CHECK(mask.test.size() == 2708 - 540);
}

TEST_CASE("split: ratio sum above one is rejected") {
  CHECK_THROWS_AS(hosl::make_split(10, {0.5, 0.4, 0.3}, 1),
                  hosl::InvalidInput);
}

TEST_CASE("largest connected component keeps the big piece") {
  DenseMatrix adj(5, 5, 0.0);
  adj(0, 1) = adj(1, 0) = 1.0;
  adj(1, 2) = adj(2, 1) = 1.0;
  adj(3, 4) = adj(4, 3) = 1.0;
  const Graph g = hosl::make_graph(std::move(adj), std::nullopt,
                                   std::vector<int>{0, 0, 1, 1, 0}, 2);
  const Graph lcc = hosl::largest_connected_component(g);
  CHECK(lcc.n == 3);
  CHECK(lcc.edge_count() == 2);
  CHECK((*lcc.labels)[2] == 1);
}
