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

#include <algorithm>
#include <cmath>
#include <random>

#include "hosl/error.hpp"

namespace hosl {

std::string to_string(AttackKind kind) {
  switch (kind) {
    case AttackKind::kRandom:
      return "random";
    case AttackKind::kHeterophily:
      return "heterophily";
    case AttackKind::kTargetedHeterophily:
      return "targeted";
  }
  return "unknown";
}

AttackKind attack_kind_from_string(const std::string& name) {
  if (name == "random") return AttackKind::kRandom;
  if (name == "heterophily") return AttackKind::kHeterophily;
  if (name == "targeted" || name == "targeted_heterophily") {
    return AttackKind::kTargetedHeterophily;
  }
  throw InvalidInput("unknown attack kind: " + name);
}

void AttackSpec::validate() const {
  if (rate.has_value() == budget.has_value()) {
    throw InvalidInput("AttackSpec: exactly one of rate/budget must be set");
  }
  if (rate && !(*rate >= 0.0 && *rate <= 1.0)) {
    throw InvalidInput("AttackSpec: rate must lie in [0,1]");
  }
  if (budget && (*budget < 0 || *budget > 5)) {
    throw InvalidInput("AttackSpec: per-target budget must lie in [0,5]");
  }
}

namespace {

// Mutable attack state over a working copy of the adjacency. Deletions pick
// only edges of the clean graph; insertions pick only pairs absent from both
// the clean and the current graph, so a deleted edge can never re-enter and
// the perturbation record stays consistent with the clean graph.
struct AttackState {
  explicit AttackState(const Graph& g) : clean(g), graph(g), rng(0) {}

  const Graph& clean;
  Graph graph;
  std::mt19937_64 rng;
  Perturbation record;

  std::size_t pick(std::size_t bound) {
    std::uniform_int_distribution<std::size_t> dist(0, bound - 1);
    return dist(rng);
  }

  void insert(Edge e) {
    graph.adjacency(e.first, e.second) = 1.0;
    graph.adjacency(e.second, e.first) = 1.0;
    record.added.push_back(e);
  }

  void remove(Edge e) {
    graph.adjacency(e.first, e.second) = 0.0;
    graph.adjacency(e.second, e.first) = 0.0;
    record.removed.push_back(e);
  }
};

std::vector<Edge> collect_edges(const Graph& g, bool same_class_only) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < g.n; ++i) {
    for (std::size_t j = i + 1; j < g.n; ++j) {
      if (g.adjacency(i, j) == 0.0) continue;
      if (same_class_only && (*g.labels)[i] != (*g.labels)[j]) continue;
      edges.push_back({i, j});
    }
  }
  return edges;
}

// Count of unordered absent pairs; different-class pairs only when asked.
std::size_t count_absent_pairs(const Graph& g, bool cross_class_only) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < g.n; ++i) {
    for (std::size_t j = i + 1; j < g.n; ++j) {
      if (g.adjacency(i, j) != 0.0) continue;
      if (cross_class_only && (*g.labels)[i] == (*g.labels)[j]) continue;
      ++count;
    }
  }
  return count;
}

// Uniform absent pair by rejection; the caller guarantees the pool is
// nonempty via its counter.
Edge sample_absent_pair(AttackState& st, bool cross_class_only) {
  const Graph& g = st.graph;
  while (true) {
    const std::size_t u = st.pick(g.n);
    const std::size_t v = st.pick(g.n);
    if (u == v) continue;
    if (g.adjacency(u, v) != 0.0 || st.clean.adjacency(u, v) != 0.0) continue;
    if (cross_class_only && (*g.labels)[u] == (*g.labels)[v]) continue;
    return {std::min(u, v), std::max(u, v)};
  }
}

std::size_t operation_count(const Graph& g, const AttackSpec& spec) {
  return static_cast<std::size_t>(
      std::floor(*spec.rate * static_cast<double>(g.edge_count())));
}

}  // namespace

std::pair<Graph, Perturbation> attack_random(const Graph& g,
                                             const AttackSpec& spec) {
  spec.validate();
  if (spec.kind != AttackKind::kRandom) {
    throw InvalidInput("attack_random: spec.kind mismatch");
  }
  g.validate();
  if (!g.is_binary()) throw InvalidInput("attack_random: graph must be binary");

  const std::size_t ops = operation_count(g, spec);
  std::vector<Edge> deletable = collect_edges(g, /*same_class_only=*/false);
  std::size_t addable = g.n * (g.n - 1) / 2 - deletable.size();
  if (ops > deletable.size() + addable) {
    throw InvalidInput("attack_random: budget exceeds available edge slots");
  }

  AttackState st(g);
  st.rng.seed(spec.seed);
  std::bernoulli_distribution coin(0.5);
  for (std::size_t op = 0; op < ops; ++op) {
    bool add = coin(st.rng);
    if (add && addable == 0) add = false;
    if (!add && deletable.empty()) add = true;
    if (add) {
      st.insert(sample_absent_pair(st, /*cross_class_only=*/false));
      --addable;
    } else {
      const std::size_t k = st.pick(deletable.size());
      st.remove(deletable[k]);
      deletable[k] = deletable.back();
      deletable.pop_back();
    }
  }
  st.graph.validate();
  return {std::move(st.graph), std::move(st.record)};
}

std::pair<Graph, Perturbation> attack_heterophily(const Graph& g,
                                                  const AttackSpec& spec) {
  spec.validate();
  if (spec.kind != AttackKind::kHeterophily) {
    throw InvalidInput("attack_heterophily: spec.kind mismatch");
  }
  g.validate();
  if (!g.labels) {
    throw InvalidInput("attack_heterophily: graph has no labels");
  }
  if (!g.is_binary()) {
    throw InvalidInput("attack_heterophily: graph must be binary");
  }

  const std::size_t ops = operation_count(g, spec);
  std::vector<Edge> deletable = collect_edges(g, /*same_class_only=*/true);
  std::size_t addable = count_absent_pairs(g, /*cross_class_only=*/true);

  AttackState st(g);
  st.rng.seed(spec.seed);
  std::bernoulli_distribution coin(0.5);
  for (std::size_t op = 0; op < ops; ++op) {
    bool add = coin(st.rng);
    if (add && addable == 0) add = false;
    if (!add && deletable.empty()) add = true;
    if (add && addable == 0) {
      st.record.warnings = ops - op;  // both pools dry
      break;
    }
    if (add) {
      st.insert(sample_absent_pair(st, /*cross_class_only=*/true));
      --addable;
    } else {
      const std::size_t k = st.pick(deletable.size());
      st.remove(deletable[k]);
      deletable[k] = deletable.back();
      deletable.pop_back();
    }
  }
  st.graph.validate();
  return {std::move(st.graph), std::move(st.record)};
}

std::pair<Graph, Perturbation> attack_targeted(const Graph& g,
                                               const AttackSpec& spec) {
  spec.validate();
  if (spec.kind != AttackKind::kTargetedHeterophily) {
    throw InvalidInput("attack_targeted: spec.kind mismatch");
  }
  g.validate();
  if (!g.labels) throw InvalidInput("attack_targeted: graph has no labels");
  if (!g.is_binary()) {
    throw InvalidInput("attack_targeted: graph must be binary");
  }

  std::vector<std::size_t> targets;
  if (spec.targets) {
    targets = *spec.targets;
    for (std::size_t t : targets) {
      if (t >= g.n) throw InvalidInput("attack_targeted: target out of range");
    }
  } else {
    for (std::size_t i = 0; i < g.n; ++i) {
      if (g.degree(i) > 10) targets.push_back(i);
    }
  }

  AttackState st(g);
  st.rng.seed(spec.seed);
  if (targets.empty()) {
    st.record.warnings = 1;  // nothing matched the degree threshold
    return {std::move(st.graph), std::move(st.record)};
  }

  const std::vector<int>& y = *g.labels;
  const int budget = *spec.budget;
  for (std::size_t t : targets) {
    for (int b = 0; b < budget; ++b) {
      // Candidates: different-class nodes not adjacent to t in the current
      // graph (insertions at other targets shrink the pool too).
      std::vector<std::size_t> pool;
      for (std::size_t v = 0; v < g.n; ++v) {
        if (v == t || y[v] == y[t]) continue;
        if (st.graph.adjacency(t, v) != 0.0) continue;
        pool.push_back(v);
      }
      if (pool.empty()) {
        st.record.warnings += static_cast<std::size_t>(budget - b);
        break;
      }
      const std::size_t v = pool[st.pick(pool.size())];
      st.insert({std::min(t, v), std::max(t, v)});
    }
  }
  st.graph.validate();
  return {std::move(st.graph), std::move(st.record)};
}

std::pair<Graph, Perturbation> run_attack(const Graph& g,
                                          const AttackSpec& spec) {
  switch (spec.kind) {
    case AttackKind::kRandom:
      return attack_random(g, spec);
    case AttackKind::kHeterophily:
      return attack_heterophily(g, spec);
    case AttackKind::kTargetedHeterophily:
      return attack_targeted(g, spec);
  }
  throw InvalidInput("run_attack: unknown kind");
}

}  // namespace hosl
