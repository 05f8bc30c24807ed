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

#ifndef HOSL_ATTACK_HPP_
#define HOSL_ATTACK_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hosl/graph.hpp"

namespace hosl {

enum class AttackKind { kRandom, kHeterophily, kTargetedHeterophily };

std::string to_string(AttackKind kind);
AttackKind attack_kind_from_string(const std::string& name);

// Exactly one of rate/budget must be set: rate (fraction of |E|) drives the
// global attacks, budget (edges per target, 0..5) the targeted one.
struct AttackSpec {
  AttackKind kind = AttackKind::kRandom;
  std::optional<double> rate;
  std::optional<int> budget;
  std::uint64_t seed = 0;
  std::optional<std::vector<std::size_t>> targets;

  void validate() const;
};

using Edge = std::pair<std::size_t, std::size_t>;  // u < v

// Record of one poisoning: edges inserted into and deleted from the clean
// graph. `warnings` counts operations skipped because a candidate pool ran
// dry (partial perturbation).
struct Perturbation {
  std::vector<Edge> added;
  std::vector<Edge> removed;
  std::size_t warnings = 0;

  std::size_t size() const { return added.size() + removed.size(); }
};

// floor(rate * |E|) operations, each a fair coin between inserting a uniform
// absent pair and deleting a uniform present edge.
std::pair<Graph, Perturbation> attack_random(const Graph& g,
                                             const AttackSpec& spec);

// Same operation count; the coin picks between inserting a uniform absent
// different-class pair and deleting a uniform present same-class edge.
// Either edit raises feature smoothness under the block-model features.
std::pair<Graph, Perturbation> attack_heterophily(const Graph& g,
                                                  const AttackSpec& spec);

// Per-target heterophilous insertions incident to each target node.
// Default target set: all nodes of degree > 10.
std::pair<Graph, Perturbation> attack_targeted(const Graph& g,
                                               const AttackSpec& spec);

std::pair<Graph, Perturbation> run_attack(const Graph& g,
                                          const AttackSpec& spec);

}  // namespace hosl

#endif  // HOSL_ATTACK_HPP_
