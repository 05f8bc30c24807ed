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

#include "hosl/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>
#include <utility>

#include <json.hpp>

#include "hosl/error.hpp"
#include "hosl/rng.hpp"
#include "hosl/tolerances.hpp"

namespace hosl {
namespace {

using nlohmann::json;

void check_keys(const json& obj, const std::set<std::string>& allowed,
                const std::string& where) {
  for (const auto& item : obj.items()) {
    if (!allowed.contains(item.key())) {
      throw InvalidInput("config: unknown key `" + item.key() + "` in " +
                         where);
    }
  }
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

DatasetSpec parse_dataset(const json& obj) {
  if (!obj.is_object()) throw InvalidInput("config: dataset must be an object");
  DatasetSpec spec;
  const std::string kind = obj.value("kind", std::string());
  if (kind == "files") {
    check_keys(obj,
               {"kind", "name", "edges", "features", "labels", "lcc",
                "n_hint"},
               "dataset");
    spec.kind = DatasetSpec::Kind::kFiles;
    if (!obj.contains("edges")) {
      throw InvalidInput("config: dataset.edges is required for kind=files");
    }
    spec.edges = obj.at("edges").get<std::string>();
    if (obj.contains("features")) {
      spec.features = obj.at("features").get<std::string>();
    }
    if (obj.contains("labels")) {
      spec.labels = obj.at("labels").get<std::string>();
    }
    spec.lcc = obj.value("lcc", false);
    if (obj.contains("n_hint")) {
      spec.n_hint = obj.at("n_hint").get<std::size_t>();
    }
    spec.name = obj.value("name", std::string("files"));
  } else if (kind == "sbm") {
    check_keys(obj,
               {"kind", "name", "n", "classes", "p_in", "p_out", "noise_p",
                "self_loop_homophily"},
               "dataset");
    spec.kind = DatasetSpec::Kind::kSbm;
    spec.sbm.n = obj.value("n", std::size_t{200});
    spec.sbm.classes = obj.value("classes", 2);
    spec.sbm.p_in = obj.value("p_in", 0.1);
    spec.sbm.p_out = obj.value("p_out", 0.01);
    spec.sbm.noise_p = obj.value("noise_p", 0.9);
    spec.sbm.self_loop_homophily = obj.value("self_loop_homophily", true);
    spec.name = obj.value("name", std::string("sbm"));
  } else {
    throw InvalidInput("config: dataset.kind must be `files` or `sbm`");
  }
  return spec;
}

ExperimentAttack parse_attack(const json& obj) {
  if (!obj.is_object()) throw InvalidInput("config: attack must be an object");
  check_keys(obj, {"kind", "rate", "budget", "targets"}, "attack");
  ExperimentAttack attack;
  const std::string kind = obj.value("kind", std::string("none"));
  if (kind == "none") {
    attack.enabled = false;
    return attack;
  }
  attack.enabled = true;
  attack.spec.kind = attack_kind_from_string(kind);
  if (obj.contains("rate")) attack.spec.rate = obj.at("rate").get<double>();
  if (obj.contains("budget")) attack.spec.budget = obj.at("budget").get<int>();
  if (obj.contains("targets")) {
    attack.spec.targets =
        obj.at("targets").get<std::vector<std::size_t>>();
  }
  attack.spec.validate();
  return attack;
}

void parse_learner(const json& obj, LearnerConfig& cfg) {
  check_keys(obj,
             {"alpha", "beta", "lambda", "eta", "tau", "lr_s", "lr_gnn",
              "outer_iters", "patience"},
             "learner");
  cfg.alpha = obj.value("alpha", cfg.alpha);
  cfg.beta = obj.value("beta", cfg.beta);
  cfg.lambda = obj.value("lambda", cfg.lambda);
  if (obj.contains("eta")) cfg.eta = obj.at("eta").get<std::vector<double>>();
  cfg.tau = obj.value("tau", cfg.tau);
  cfg.lr_s = obj.value("lr_s", cfg.lr_s);
  cfg.lr_gnn = obj.value("lr_gnn", cfg.lr_gnn);
  cfg.outer_iters = obj.value("outer_iters", cfg.outer_iters);
  cfg.patience = obj.value("patience", cfg.patience);
  cfg.validate();
}

void parse_train(const json& obj, TrainConfig& cfg) {
  check_keys(obj,
             {"lr", "weight_decay", "epochs", "dropout", "adaptive", "hidden"},
             "train");
  cfg.lr = obj.value("lr", cfg.lr);
  cfg.weight_decay = obj.value("weight_decay", cfg.weight_decay);
  cfg.epochs = obj.value("epochs", cfg.epochs);
  cfg.dropout = obj.value("dropout", cfg.dropout);
  cfg.adaptive = obj.value("adaptive", cfg.adaptive);
  cfg.hidden = obj.value("hidden", cfg.hidden);
  if (cfg.epochs < 1) throw InvalidInput("config: train.epochs must be >= 1");
  if (!(cfg.dropout >= 0.0 && cfg.dropout < 1.0)) {
    throw InvalidInput("config: train.dropout must lie in [0,1)");
  }
}

}  // namespace

void ExperimentConfig::validate() const {
  if (schema_version != 1) {
    throw InvalidInput("config: unsupported schema_version");
  }
  if (seeds.empty()) throw InvalidInput("config: seeds must be nonempty");
  if (methods.empty()) throw InvalidInput("config: methods must be nonempty");
  for (const std::string& m : methods) {
    if (m != "gcn" && m != "hosl") {
      throw InvalidInput("config: unknown method `" + m + "`");
    }
  }
  if (threads < 1) throw InvalidInput("config: threads must be >= 1");
  if (dataset.kind == DatasetSpec::Kind::kFiles) {
    if (!std::filesystem::exists(dataset.edges)) {
      throw InvalidInput("config: edge file does not exist: " + dataset.edges);
    }
    if (dataset.features && !std::filesystem::exists(*dataset.features)) {
      throw InvalidInput("config: feature file does not exist: " +
                         *dataset.features);
    }
    if (dataset.labels && !std::filesystem::exists(*dataset.labels)) {
      throw InvalidInput("config: label file does not exist: " +
                         *dataset.labels);
    }
  }
  learner.validate();
}

ExperimentConfig parse_experiment_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
  if (!root.is_object()) throw InvalidInput("config: root must be an object");
  check_keys(root,
             {"schema_version", "dataset", "attack", "methods", "learner",
              "train", "split", "seeds", "output_dir", "threads"},
             "root");
  if (!root.contains("schema_version")) {
    throw InvalidInput("config: schema_version is required");
  }

  ExperimentConfig cfg;
  cfg.schema_version = root.at("schema_version").get<int>();
  if (root.contains("dataset")) cfg.dataset = parse_dataset(root.at("dataset"));
  if (root.contains("attack")) cfg.attack = parse_attack(root.at("attack"));
  if (root.contains("methods")) {
    cfg.methods = root.at("methods").get<std::vector<std::string>>();
  }
  if (root.contains("learner")) parse_learner(root.at("learner"), cfg.learner);
  if (root.contains("train")) parse_train(root.at("train"), cfg.train);
  if (root.contains("split")) {
    const auto ratios = root.at("split").get<std::vector<double>>();
    if (ratios.size() != 3) {
      throw InvalidInput("config: split must have 3 ratios");
    }
    cfg.split_ratios = {ratios[0], ratios[1], ratios[2]};
  }
  if (root.contains("seeds")) {
    cfg.seeds = root.at("seeds").get<std::vector<std::uint64_t>>();
  }
  cfg.output_dir = root.value("output_dir", std::string());
  cfg.threads = root.value("threads", 1);
  cfg.validate();
  return cfg;
}

ExperimentConfig load_experiment_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open config: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_experiment_config(ss.str());
}

namespace {

double smoothness_value(const Graph& g,
                        const DenseMatrix* adjacency_override = nullptr) {
  if (g.features) return feature_smoothness(g, adjacency_override);
  Graph with_identity = g;
  with_identity.features = DenseMatrix::identity(g.n);
  return feature_smoothness(with_identity, adjacency_override);
}

bool learned_structure_feasible(const DenseMatrix& s) {
  for (double v : s.data()) {
    if (!(v >= 0.0 && v <= 1.0)) return false;
  }
  for (std::size_t i = 0; i < s.rows(); ++i) {
    if (s(i, i) != 0.0) return false;
  }
  return max_asymmetry(s) <= tol::kGraphSymmetry;
}

struct Job {
  std::uint64_t seed = 0;
  std::string method;
};

ResultRecord run_job(const ExperimentConfig& cfg, const Job& job,
                     const Graph* file_graph,
                     std::atomic<std::size_t>& violations) {
  ResultRecord record;
  record.dataset = cfg.dataset.name;
  record.method = job.method;
  record.seed = job.seed;
  if (cfg.attack.enabled) {
    record.attack = to_string(cfg.attack.spec.kind);
    record.rate = cfg.attack.spec.rate
                      ? *cfg.attack.spec.rate
                      : static_cast<double>(*cfg.attack.spec.budget);
  }

  try {
    Graph clean;
    if (cfg.dataset.kind == DatasetSpec::Kind::kFiles) {
      clean = *file_graph;
    } else {
      SbmConfig sbm = cfg.dataset.sbm;
      sbm.seed = derive_seed(job.seed, seed_stream::kDataset);
      clean = generate_sbm(sbm);
    }
    const SplitMask split = make_split(
        clean.n, cfg.split_ratios, derive_seed(job.seed, seed_stream::kSplit));

    Graph poisoned = clean;
    if (cfg.attack.enabled) {
      AttackSpec spec = cfg.attack.spec;
      spec.seed = derive_seed(job.seed, seed_stream::kAttack);
      poisoned = run_attack(clean, spec).first;
    }
    record.smoothness_before = smoothness_value(poisoned);

    if (!poisoned.labels) {
      throw InvalidInput("experiment: dataset has no labels");
    }
    const DenseMatrix x = poisoned.effective_features();
    const std::vector<int>& labels = *poisoned.labels;

    const auto started = std::chrono::steady_clock::now();
    if (job.method == "gcn") {
      TrainConfig train = cfg.train;
      train.seed = derive_seed(job.seed, seed_stream::kTrain);
      const TrainResult trained = train_gcn(poisoned, split, train);
      const GcnOutput eval =
          gcn_forward(normalize_adjacency(poisoned), x, trained.params);
      record.test_accuracy = accuracy(eval.probabilities, labels, split.test);
      record.smoothness_after = record.smoothness_before;
    } else {
      LearnerConfig learner = cfg.learner;
      learner.seed = derive_seed(job.seed, seed_stream::kLearner);
      const LearnedStructure learned =
          learn_structure(poisoned, split, learner, cfg.train);
      if (!learned_structure_feasible(learned.s)) {
        violations.fetch_add(1, std::memory_order_relaxed);
      }
      const GcnOutput eval =
          gcn_forward(normalize_adjacency(learned.s), x, learned.params);
      record.test_accuracy = accuracy(eval.probabilities, labels, split.test);
      record.smoothness_after = smoothness_value(poisoned, &learned.s);
    }
    record.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                      started)
            .count();
  } catch (const std::exception& e) {
    record.ok = false;
    record.error = e.what();
  }
  return record;
}

}  // namespace

ExperimentOutcome run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();

  // File datasets load once; block models regenerate per seed.
  Graph file_graph;
  if (cfg.dataset.kind == DatasetSpec::Kind::kFiles) {
    LoadReport report =
        load_edge_list(cfg.dataset.edges, cfg.dataset.n_hint,
                       cfg.dataset.features, cfg.dataset.labels);
    file_graph = std::move(report.graph);
    if (cfg.dataset.lcc) file_graph = largest_connected_component(file_graph);
  }

  std::vector<Job> jobs;
  for (std::uint64_t seed : cfg.seeds) {
    for (const std::string& method : cfg.methods) {
      jobs.push_back({seed, method});
    }
  }

  ExperimentOutcome outcome;
  outcome.records.resize(jobs.size());
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> violations{0};

  const std::size_t workers = std::min<std::size_t>(
      static_cast<std::size_t>(cfg.threads), jobs.size());
  auto worker = [&]() {
    while (true) {
      const std::size_t idx = next.fetch_add(1);
      if (idx >= jobs.size()) break;
      outcome.records[idx] =
          run_job(cfg, jobs[idx],
                  cfg.dataset.kind == DatasetSpec::Kind::kFiles ? &file_graph
                                                                : nullptr,
                  violations);
    }
  };
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  outcome.feasibility_violations = violations.load();
  for (const ResultRecord& r : outcome.records) {
    if (!r.ok) outcome.all_ok = false;
  }
  outcome.aggregates = aggregate_records(outcome.records);
  return outcome;
}

std::vector<AggregateRow> aggregate_records(
    const std::vector<ResultRecord>& records) {
  using Key = std::tuple<std::string, std::string, double, std::string>;
  std::vector<Key> order;
  auto key_of = [](const ResultRecord& r) {
    return Key{r.dataset, r.attack, r.rate, r.method};
  };
  for (const ResultRecord& r : records) {
    if (!r.ok) continue;
    const Key k = key_of(r);
    if (std::find(order.begin(), order.end(), k) == order.end()) {
      order.push_back(k);
    }
  }
  std::sort(order.begin(), order.end());

  std::vector<AggregateRow> rows;
  for (const Key& k : order) {
    AggregateRow row;
    std::tie(row.dataset, row.attack, row.rate, row.method) = k;
    std::vector<double> acc;
    std::vector<double> smooth_after;
    for (const ResultRecord& r : records) {
      if (!r.ok || key_of(r) != k) continue;
      acc.push_back(r.test_accuracy);
      smooth_after.push_back(r.smoothness_after);
      row.smoothness_before_mean += r.smoothness_before;
      row.wall_time_mean += r.wall_time_seconds;
    }
    row.n_seeds = acc.size();
    const double n = static_cast<double>(acc.size());
    auto mean_std = [n](const std::vector<double>& v) {
      double mean = 0.0;
      for (double x : v) mean += x;
      mean /= n;
      double var = 0.0;
      for (double x : v) var += (x - mean) * (x - mean);
      const double std_dev = v.size() > 1 ? std::sqrt(var / (n - 1.0)) : 0.0;
      return std::pair<double, double>{mean, std_dev};
    };
    std::tie(row.accuracy_mean, row.accuracy_std) = mean_std(acc);
    std::tie(row.smoothness_after_mean, row.smoothness_after_std) =
        mean_std(smooth_after);
    row.smoothness_before_mean /= n;
    row.wall_time_mean /= n;
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_records_csv(const std::vector<ResultRecord>& records,
                       const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write file: " + path);
  out << "dataset,attack,rate,method,seed,test_accuracy,smoothness_before,"
         "smoothness_after,wall_time_s,status\n";
  for (const ResultRecord& r : records) {
    std::string status = r.ok ? "ok" : "error";
    out << r.dataset << ',' << r.attack << ',' << fmt_double(r.rate) << ','
        << r.method << ',' << r.seed << ',' << fmt_double(r.test_accuracy)
        << ',' << fmt_double(r.smoothness_before) << ','
        << fmt_double(r.smoothness_after) << ','
        << fmt_double(r.wall_time_seconds) << ',' << status << '\n';
  }
}

std::vector<ResultRecord> read_records_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open file: " + path);
  std::vector<ResultRecord> records;
  std::string line;
  bool header = true;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (header) {
      header = false;
      continue;
    }
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (start <= line.size()) {
      std::size_t comma = line.find(',', start);
      if (comma == std::string::npos) comma = line.size();
      fields.push_back(line.substr(start, comma - start));
      start = comma + 1;
    }
    if (fields.size() != 10) {
      throw ParseError(path + ":" + std::to_string(line_no) +
                       ": expected 10 fields");
    }
    ResultRecord r;
    r.dataset = fields[0];
    r.attack = fields[1];
    r.rate = std::stod(fields[2]);
    r.method = fields[3];
    r.seed = std::stoull(fields[4]);
    r.test_accuracy = std::stod(fields[5]);
    r.smoothness_before = std::stod(fields[6]);
    r.smoothness_after = std::stod(fields[7]);
    r.wall_time_seconds = std::stod(fields[8]);
    r.ok = fields[9] == "ok";
    records.push_back(std::move(r));
  }
  return records;
}

void write_aggregate_csv(const std::vector<AggregateRow>& rows,
                         const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write file: " + path);
  out << "dataset,attack,rate,method,n_seeds,accuracy_mean,accuracy_std,"
         "smoothness_before_mean,smoothness_after_mean,smoothness_after_std,"
         "wall_time_mean\n";
  for (const AggregateRow& r : rows) {
    out << r.dataset << ',' << r.attack << ',' << fmt_double(r.rate) << ','
        << r.method << ',' << r.n_seeds << ',' << fmt_double(r.accuracy_mean)
        << ',' << fmt_double(r.accuracy_std) << ','
        << fmt_double(r.smoothness_before_mean) << ','
        << fmt_double(r.smoothness_after_mean) << ','
        << fmt_double(r.smoothness_after_std) << ','
        << fmt_double(r.wall_time_mean) << '\n';
  }
}

void write_aggregate_json(const std::vector<AggregateRow>& rows,
                          const std::string& path) {
  json arr = json::array();
  for (const AggregateRow& r : rows) {
    arr.push_back({{"dataset", r.dataset},
                   {"attack", r.attack},
                   {"rate", r.rate},
                   {"method", r.method},
                   {"n_seeds", r.n_seeds},
                   {"accuracy_mean", r.accuracy_mean},
                   {"accuracy_std", r.accuracy_std},
                   {"smoothness_before_mean", r.smoothness_before_mean},
                   {"smoothness_after_mean", r.smoothness_after_mean},
                   {"smoothness_after_std", r.smoothness_after_std},
                   {"wall_time_mean", r.wall_time_mean}});
  }
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write file: " + path);
  out << arr.dump(2) << '\n';
}

void write_curves_csv(const std::vector<AggregateRow>& rows,
                      const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write file: " + path);
  out << "metric,dataset,attack,rate,method,mean,std\n";
  for (const AggregateRow& r : rows) {
    out << "test_accuracy," << r.dataset << ',' << r.attack << ','
        << fmt_double(r.rate) << ',' << r.method << ','
        << fmt_double(r.accuracy_mean) << ',' << fmt_double(r.accuracy_std)
        << '\n';
  }
  for (const AggregateRow& r : rows) {
    out << "smoothness_after," << r.dataset << ',' << r.attack << ','
        << fmt_double(r.rate) << ',' << r.method << ','
        << fmt_double(r.smoothness_after_mean) << ','
        << fmt_double(r.smoothness_after_std) << '\n';
  }
}

std::string default_output_dir() {
  const char* env = std::getenv(kOutputDirEnvVar);
  if (env != nullptr && env[0] != '\0') return env;
  return "hosl_out";
}

}  // namespace hosl
