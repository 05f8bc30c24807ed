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

#ifndef HOSL_EXPERIMENT_HPP_
#define HOSL_EXPERIMENT_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hosl/attack.hpp"
#include "hosl/dataset.hpp"
#include "hosl/gcn.hpp"
#include "hosl/learner.hpp"

namespace hosl {

// One dataset source: either an on-disk edge list with sidecars or a block
// model regenerated per seed.
struct DatasetSpec {
  enum class Kind { kFiles, kSbm } kind = Kind::kSbm;
  std::string name = "sbm";
  // files
  std::string edges;
  std::optional<std::string> features;
  std::optional<std::string> labels;
  bool lcc = false;
  std::optional<std::size_t> n_hint;
  // sbm
  SbmConfig sbm;
};

struct ExperimentAttack {
  bool enabled = false;
  AttackSpec spec;
};

struct ExperimentConfig {
  int schema_version = 1;
  DatasetSpec dataset;
  ExperimentAttack attack;
  std::vector<std::string> methods = {"gcn", "hosl"};
  LearnerConfig learner;
  TrainConfig train;
  std::array<double, 3> split_ratios = {0.1, 0.1, 0.8};
  std::vector<std::uint64_t> seeds;
  std::string output_dir;
  int threads = 1;

  void validate() const;
};

// Strict parser: unknown keys are errors, schema_version is mandatory.
ExperimentConfig parse_experiment_config(const std::string& json_text);
ExperimentConfig load_experiment_config(const std::string& path);

struct ResultRecord {
  std::string dataset;
  std::string attack = "none";
  double rate = 0.0;  // perturbation rate, or per-target budget for targeted
  std::string method;
  std::uint64_t seed = 0;
  double test_accuracy = 0.0;
  double smoothness_before = 0.0;
  double smoothness_after = 0.0;
  double wall_time_seconds = 0.0;
  bool ok = true;
  std::string error;
};

struct AggregateRow {
  std::string dataset;
  std::string attack;
  double rate = 0.0;
  std::string method;
  std::size_t n_seeds = 0;
  double accuracy_mean = 0.0;
  double accuracy_std = 0.0;
  double smoothness_before_mean = 0.0;
  double smoothness_after_mean = 0.0;
  double smoothness_after_std = 0.0;
  double wall_time_mean = 0.0;
};

struct ExperimentOutcome {
  std::vector<ResultRecord> records;  // ordered by (seed, method)
  std::vector<AggregateRow> aggregates;
  std::size_t feasibility_violations = 0;  // learned-S box/symmetry failures
  bool all_ok = true;
};

// Runs every seed x method job (in up to cfg.threads workers), evaluates on
// the test mask at the best-validation checkpoint, and aggregates.
// Per-job failures are recorded and do not stop the remaining jobs.
ExperimentOutcome run_experiment(const ExperimentConfig& cfg);

// Mean/sample-std aggregation of successful records, grouped by
// (dataset, attack, rate, method); deterministic row order.
std::vector<AggregateRow> aggregate_records(
    const std::vector<ResultRecord>& records);

void write_records_csv(const std::vector<ResultRecord>& records,
                       const std::string& path);
std::vector<ResultRecord> read_records_csv(const std::string& path);
void write_aggregate_csv(const std::vector<AggregateRow>& rows,
                         const std::string& path);
void write_aggregate_json(const std::vector<AggregateRow>& rows,
                          const std::string& path);
// Long-format table (metric,dataset,attack,rate,method,mean,std) covering
// accuracy and smoothness curves against the perturbation rate.
void write_curves_csv(const std::vector<AggregateRow>& rows,
                      const std::string& path);

// Env var consulted when a config or command omits the output directory.
inline constexpr const char* kOutputDirEnvVar = "HOSL_OUTPUT_DIR";
std::string default_output_dir();

}  // namespace hosl

#endif  // HOSL_EXPERIMENT_HPP_
