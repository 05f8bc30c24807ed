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

#include "hosl/attack.hpp"

#include <doctest.h>

#include <set>

#include "hosl/dataset.hpp"
#include "hosl/error.hpp"
#include "support/test_util.hpp"

using hosl::AttackKind;
using hosl::AttackSpec;
using hosl::DenseMatrix;
using hosl::Graph;

namespace {

Graph labeled_sbm(std::size_t n, std::uint64_t seed, double p_in = 0.5,
                  double p_out = 0.1) {
  hosl::SbmConfig cfg;
  cfg.n = n;
  cfg.classes = 2;
  cfg.p_in = p_in;
  cfg.p_out = p_out;
  cfg.noise_p = 0.8;
  cfg.seed = seed;
  return hosl::generate_sbm(cfg);
}

AttackSpec rate_spec(AttackKind kind, double rate, std::uint64_t seed) {
  AttackSpec spec;
  spec.kind = kind;
  spec.rate = rate;
  spec.seed = seed;
  return spec;
}

void check_perturbation_consistency(const Graph& clean, const Graph& attacked,
                                    const hosl::Perturbation& pert) {
  std::set<hosl::Edge> added(pert.added.begin(), pert.added.end());
  std::set<hosl::Edge> removed(pert.removed.begin(), pert.removed.end());
  CHECK(added.size() == pert.added.size());
  CHECK(removed.size() == pert.removed.size());
  for (const hosl::Edge& e : pert.added) {
    CHECK(!removed.contains(e));
    CHECK(clean.adjacency(e.first, e.second) == 0.0);
    CHECK(attacked.adjacency(e.first, e.second) == 1.0);
  }
  for (const hosl::Edge& e : pert.removed) {
    CHECK(clean.adjacency(e.first, e.second) == 1.0);
    CHECK(attacked.adjacency(e.first, e.second) == 0.0);
  }
  attacked.validate();
  CHECK(attacked.is_binary());
}

}  // namespace

TEST_CASE("random attack: rate zero leaves the graph untouched") {
  const Graph g = hosl::testing::random_er_graph(12, 0.3, 1);
  const auto [attacked, pert] =
      hosl::attack_random(g, rate_spec(AttackKind::kRandom, 0.0, 5));
  CHECK(pert.size() == 0);
  CHECK(hosl::testing::max_entry_diff(attacked.adjacency, g.adjacency) == 0.0);
}

TEST_CASE("random attack: budget arithmetic on the path graph") {
  DenseMatrix adj(3, 3, 0.0);
  adj(0, 1) = adj(1, 0) = 1.0;
  adj(1, 2) = adj(2, 1) = 1.0;
  const Graph g = hosl::make_graph(std::move(adj));
  const auto [attacked, pert] =
      hosl::attack_random(g, rate_spec(AttackKind::kRandom, 1.0, 3));
  CHECK(pert.size() == 2);
  check_perturbation_consistency(g, attacked, pert);
}

TEST_CASE("random attack: deterministic under seed") {
  const Graph g = hosl::testing::random_er_graph(20, 0.2, 2);
  const auto first =
      hosl::attack_random(g, rate_spec(AttackKind::kRandom, 0.5, 11));
  const auto second =
      hosl::attack_random(g, rate_spec(AttackKind::kRandom, 0.5, 11));
  CHECK(first.second.added == second.second.added);
  CHECK(first.second.removed == second.second.removed);
}

TEST_CASE("random attack output remains a valid binary graph") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Graph g = hosl::testing::random_er_graph(15, 0.3, seed);
    const auto [attacked, pert] =
        hosl::attack_random(g, rate_spec(AttackKind::kRandom, 0.6, seed));
    check_perturbation_consistency(g, attacked, pert);
    CHECK(pert.size() ==
          static_cast<std::size_t>(0.6 * static_cast<double>(g.edge_count())));
  }
}

TEST_CASE("attack spec validation") {
  AttackSpec both;
  both.rate = 0.5;
  both.budget = 2;
  CHECK_THROWS_AS(both.validate(), hosl::InvalidInput);
  AttackSpec neither;
  CHECK_THROWS_AS(neither.validate(), hosl::InvalidInput);
  AttackSpec high;
  high.rate = 1.5;
  CHECK_THROWS_AS(high.validate(), hosl::InvalidInput);
}

TEST_CASE("heterophily attack requires labels") {
  const Graph g = hosl::testing::random_er_graph(10, 0.3, 4);
  CHECK_THROWS_AS(
      hosl::attack_heterophily(g,
                               rate_spec(AttackKind::kHeterophily, 0.2, 1)),
      hosl::InvalidInput);
}

TEST_CASE("heterophily attack only adds cross-class and removes same-class "
          "edges") {
  const Graph g = labeled_sbm(30, 7);
  const auto [attacked, pert] =
      hosl::attack_heterophily(g, rate_spec(AttackKind::kHeterophily, 0.4, 9));
  check_perturbation_consistency(g, attacked, pert);
  for (const hosl::Edge& e : pert.added) {
    CHECK((*g.labels)[e.first] != (*g.labels)[e.second]);
  }
  for (const hosl::Edge& e : pert.removed) {
    CHECK((*g.labels)[e.first] == (*g.labels)[e.second]);
  }
  CHECK(pert.size() + pert.warnings ==
        static_cast<std::size_t>(0.4 * static_cast<double>(g.edge_count())));
}

TEST_CASE("heterophily attack: smoothness never decreases step by step") {
  Graph g = labeled_sbm(24, 13);
  double previous = hosl::feature_smoothness(g);
  const auto [attacked, pert] =
      hosl::attack_heterophily(g, rate_spec(AttackKind::kHeterophily, 0.5, 3));

  // Replay the perturbation one edit at a time.
  Graph step = g;
  auto apply = [&](const hosl::Edge& e, double value) {
    step.adjacency(e.first, e.second) = value;
    step.adjacency(e.second, e.first) = value;
    const double s = hosl::feature_smoothness(step);
    CHECK(s >= previous - 1e-12);
    previous = s;
  };
  // Edits are interleaved in the record's natural order: replay additions
  // and removals in the order they were generated (record order is append
  // order within each list; both raise smoothness regardless of order).
  for (const hosl::Edge& e : pert.added) apply(e, 1.0);
  for (const hosl::Edge& e : pert.removed) apply(e, 0.0);
  CHECK(hosl::testing::max_entry_diff(step.adjacency, attacked.adjacency) ==
        0.0);
}

TEST_CASE("heterophily attack: single insertion matches the local "
          "smoothness formulas") {
  // Construct a node with known degree and homophily, insert one
  // heterophilous edge by targeting, and compare against the closed forms.
  const double p = 0.7;
  DenseMatrix adj(6, 6, 0.0);
  // Node 0 adjacent to 1,2 (class 0) and 3 (class 1): d=3, homophily
  // (2+1)/4 with the self-loop.
  for (std::size_t j : {1, 2, 3}) adj(0, j) = adj(j, 0) = 1.0;
  std::vector<int> labels = {0, 0, 0, 1, 1, 1};
  DenseMatrix x(6, 2, (1.0 - p) / 2.0);
  for (std::size_t i = 0; i < 6; ++i) {
    x(i, static_cast<std::size_t>(labels[i])) += p;
  }
  Graph g = hosl::make_graph(std::move(adj), std::move(x), std::move(labels),
                             2);

  const double d_tilde = 4.0;  // d + 1
  const double h = 3.0 / 4.0;
  const double s_before = (1.0 - h) * 2.0 * p * p;
  CHECK(hosl::local_smoothness(g, 0) == doctest::Approx(s_before));

  // Insert a heterophilous edge at node 0 (to node 4, class 1).
  g.adjacency(0, 4) = g.adjacency(4, 0) = 1.0;
  const double s_insert = (1.0 - d_tilde / (d_tilde + 1.0) * h) * 2.0 * p * p;
  CHECK(hosl::local_smoothness(g, 0) ==
        doctest::Approx(s_insert).epsilon(1e-10));
  g.adjacency(0, 4) = g.adjacency(4, 0) = 0.0;

  // Delete a homophilous edge at node 0 (to node 1).
  g.adjacency(0, 1) = g.adjacency(1, 0) = 0.0;
  const double s_delete = d_tilde / (d_tilde - 1.0) * (1.0 - h) * 2.0 * p * p;
  CHECK(hosl::local_smoothness(g, 0) ==
        doctest::Approx(s_delete).epsilon(1e-10));
}

TEST_CASE("targeted attack: explicit star center gets exactly the budget") {
  // Star with center degree 11 (> 10 threshold), all leaves same class as
  // the center; cross-class pool is the remaining nodes.
  const std::size_t n = 16;
  DenseMatrix adj(n, n, 0.0);
  for (std::size_t j = 1; j <= 11; ++j) adj(0, j) = adj(j, 0) = 1.0;
  std::vector<int> labels(n, 0);
  for (std::size_t i = 12; i < n; ++i) labels[i] = 1;
  const Graph g = hosl::make_graph(std::move(adj), std::nullopt,
                                   std::move(labels), 2);

  AttackSpec spec;
  spec.kind = AttackKind::kTargetedHeterophily;
  spec.budget = 2;
  spec.seed = 21;
  const auto [attacked, pert] = hosl::attack_targeted(g, spec);
  CHECK(pert.added.size() == 2);
  CHECK(pert.removed.empty());
  for (const hosl::Edge& e : pert.added) {
    CHECK(e.first == 0);  // center is the only node above the threshold
    CHECK((*g.labels)[e.second] == 1);
  }
}

TEST_CASE("targeted attack: budget zero and empty target set are no-ops") {
  const Graph g = labeled_sbm(14, 3, 0.3, 0.05);  // max degree stays small
  AttackSpec spec;
  spec.kind = AttackKind::kTargetedHeterophily;
  spec.budget = 0;
  spec.seed = 2;
  const auto [attacked, pert] = hosl::attack_targeted(g, spec);
  CHECK(pert.size() == 0);
  CHECK(hosl::testing::max_entry_diff(attacked.adjacency, g.adjacency) == 0.0);

  AttackSpec over;
  over.kind = AttackKind::kTargetedHeterophily;
  over.budget = 6;
  CHECK_THROWS_AS(over.validate(), hosl::InvalidInput);
}

TEST_CASE("targeted attack: no qualifying targets warns") {
  // Path graph: max degree 2.
  DenseMatrix adj(4, 4, 0.0);
  for (std::size_t i = 0; i + 1 < 4; ++i) adj(i, i + 1) = adj(i + 1, i) = 1.0;
  const Graph g = hosl::make_graph(std::move(adj), std::nullopt,
                                   std::vector<int>{0, 1, 0, 1}, 2);
  AttackSpec spec;
  spec.kind = AttackKind::kTargetedHeterophily;
  spec.budget = 2;
  const auto [attacked, pert] = hosl::attack_targeted(g, spec);
  CHECK(pert.size() == 0);
  CHECK(pert.warnings == 1);
}
