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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <utility>

#include "hosl/error.hpp"

namespace hosl {
namespace {

struct RawEdge {
  std::size_t u;
  std::size_t v;
  double w;
};

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open file: " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

bool is_blank_or_comment(const std::string& line) {
  for (char c : line) {
    if (c == '#') return true;
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

std::vector<RawEdge> parse_edges(const std::string& path) {
  std::vector<RawEdge> edges;
  std::size_t line_no = 0;
  for (const std::string& line : read_lines(path)) {
    ++line_no;
    if (is_blank_or_comment(line)) continue;
    std::istringstream ss(line);
    long long u = -1;
    long long v = -1;
    double w = 1.0;
    if (!(ss >> u >> v) || u < 0 || v < 0) {
      throw ParseError(path + ":" + std::to_string(line_no) +
                       ": expected `u v [w]` with nonnegative integers");
    }
    if (ss >> w) {
      if (!(w > 0.0 && w <= 1.0)) {
        throw ParseError(path + ":" + std::to_string(line_no) +
                         ": edge weight must lie in (0,1]");
      }
    } else {
      w = 1.0;
    }
    std::string extra;
    ss.clear();
    if (ss >> extra) {
      throw ParseError(path + ":" + std::to_string(line_no) +
                       ": trailing tokens");
    }
    edges.push_back({static_cast<std::size_t>(u), static_cast<std::size_t>(v),
                     w});
  }
  return edges;
}

DenseMatrix parse_feature_csv(const std::string& path) {
  const std::vector<std::string> lines = read_lines(path);
  std::vector<std::vector<double>> rows;
  std::size_t line_no = 0;
  for (const std::string& line : lines) {
    ++line_no;
    if (is_blank_or_comment(line)) continue;
    std::vector<double> row;
    std::size_t start = 0;
    while (start <= line.size()) {
      std::size_t comma = line.find(',', start);
      if (comma == std::string::npos) comma = line.size();
      const std::string tok = line.substr(start, comma - start);
      try {
        std::size_t used = 0;
        const double v = std::stod(tok, &used);
        while (used < tok.size() &&
               std::isspace(static_cast<unsigned char>(tok[used]))) {
          ++used;
        }
        if (used != tok.size()) throw std::invalid_argument(tok);
        row.push_back(v);
      } catch (const std::exception&) {
        throw ParseError(path + ":" + std::to_string(line_no) +
                         ": bad numeric field `" + tok + "`");
      }
      start = comma + 1;
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw ParseError(path + ":" + std::to_string(line_no) +
                       ": inconsistent column count");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError(path + ": empty feature file");
  DenseMatrix m(rows.size(), rows.front().size(), 0.0);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

std::vector<int> parse_labels(const std::string& path) {
  std::vector<int> labels;
  std::size_t line_no = 0;
  for (const std::string& line : read_lines(path)) {
    ++line_no;
    if (is_blank_or_comment(line)) continue;
    std::istringstream ss(line);
    long long y = -1;
    std::string extra;
    if (!(ss >> y) || y < 0 || (ss >> extra)) {
      throw ParseError(path + ":" + std::to_string(line_no) +
                       ": expected one nonnegative integer");
    }
    labels.push_back(static_cast<int>(y));
  }
  return labels;
}

}  // namespace

LoadReport load_edge_list(const std::string& edges_path,
                          std::optional<std::size_t> n_hint,
                          const std::optional<std::string>& features_path,
                          const std::optional<std::string>& labels_path) {
  const std::vector<RawEdge> raw = parse_edges(edges_path);

  std::optional<DenseMatrix> features;
  if (features_path) features = parse_feature_csv(*features_path);
  std::optional<std::vector<int>> labels;
  if (labels_path) labels = parse_labels(*labels_path);

  // A sidecar or an explicit hint fixes N; otherwise infer from the edges.
  std::optional<std::size_t> fixed_n = n_hint;
  if (features) {
    if (fixed_n && *fixed_n != features->rows()) {
      throw InvalidInput("load_edge_list: n_hint disagrees with feature rows");
    }
    fixed_n = features->rows();
  }
  if (labels) {
    if (fixed_n && *fixed_n != labels->size()) {
      throw InvalidInput("load_edge_list: label count disagrees with n");
    }
    fixed_n = labels->size();
  }

  std::size_t max_index = 0;
  for (const RawEdge& e : raw) max_index = std::max({max_index, e.u, e.v});
  std::size_t n = raw.empty() ? 0 : max_index + 1;
  if (fixed_n) {
    if (n > *fixed_n) {
      throw InvalidInput("load_edge_list: edge index " +
                         std::to_string(max_index) + " >= n = " +
                         std::to_string(*fixed_n));
    }
    n = *fixed_n;
  }

  LoadReport report;
  DenseMatrix adj(n, n, 0.0);
  for (const RawEdge& e : raw) {
    if (e.u == e.v) {
      ++report.dropped_self_loops;
      continue;
    }
    if (adj(e.u, e.v) != 0.0) ++report.duplicate_edges;
    adj(e.u, e.v) = e.w;
    adj(e.v, e.u) = e.w;
  }

  int class_count = 0;
  if (labels) {
    for (int y : *labels) class_count = std::max(class_count, y + 1);
  }
  report.graph = make_graph(std::move(adj), std::move(features),
                            std::move(labels), class_count);
  return report;
}

void save_graph(const Graph& g, const std::string& edges_path,
                const std::optional<std::string>& features_path,
                const std::optional<std::string>& labels_path) {
  std::ofstream out(edges_path);
  if (!out) throw InvalidInput("cannot write file: " + edges_path);
  const bool binary = g.is_binary();
  char buf[64];
  for (std::size_t i = 0; i < g.n; ++i) {
    for (std::size_t j = i + 1; j < g.n; ++j) {
      const double w = g.adjacency(i, j);
      if (w == 0.0) continue;
      if (binary) {
        out << i << ' ' << j << '\n';
      } else {
        std::snprintf(buf, sizeof buf, "%.17g", w);
        out << i << ' ' << j << ' ' << buf << '\n';
      }
    }
  }
  out.close();

  if (features_path) {
    if (!g.features) {
      throw InvalidInput("save_graph: no features to write");
    }
    std::ofstream fout(*features_path);
    if (!fout) throw InvalidInput("cannot write file: " + *features_path);
    const DenseMatrix& x = *g.features;
    for (std::size_t i = 0; i < x.rows(); ++i) {
      for (std::size_t j = 0; j < x.cols(); ++j) {
        std::snprintf(buf, sizeof buf, "%.17g", x(i, j));
        fout << (j == 0 ? "" : ",") << buf;
      }
      fout << '\n';
    }
  }
  if (labels_path) {
    if (!g.labels) throw InvalidInput("save_graph: no labels to write");
    std::ofstream lout(*labels_path);
    if (!lout) throw InvalidInput("cannot write file: " + *labels_path);
    for (int y : *g.labels) lout << y << '\n';
  }
}

double sbm_expected_homophily(const SbmConfig& cfg, int c) {
  const std::size_t base = cfg.n / static_cast<std::size_t>(cfg.classes);
  const std::size_t extra = cfg.n % static_cast<std::size_t>(cfg.classes);
  const std::size_t block =
      base + (static_cast<std::size_t>(c) < extra ? 1 : 0);
  const double same = cfg.p_in * static_cast<double>(block - 1);
  const double cross = cfg.p_out * static_cast<double>(cfg.n - block);
  const double loop = cfg.self_loop_homophily ? 1.0 : 0.0;
  const double denom = same + cross + loop;
  if (denom == 0.0) return 0.0;
  return (same + loop) / denom;
}

Graph generate_sbm(const SbmConfig& cfg) {
  if (cfg.classes < 2) throw InvalidInput("generate_sbm: classes must be >= 2");
  if (cfg.n < static_cast<std::size_t>(cfg.classes)) {
    throw InvalidInput("generate_sbm: n must be >= classes");
  }
  if (!(cfg.p_out >= 0.0 && cfg.p_out < cfg.p_in && cfg.p_in <= 1.0)) {
    throw InvalidInput("generate_sbm: need 0 <= p_out < p_in <= 1");
  }
  if (!(cfg.noise_p > 0.0 && cfg.noise_p <= 1.0)) {
    throw InvalidInput("generate_sbm: noise_p must lie in (0,1]");
  }
  const double h_floor = 1.0 / static_cast<double>(cfg.classes);
  for (int c = 0; c < cfg.classes; ++c) {
    if (sbm_expected_homophily(cfg, c) <= h_floor) {
      throw InvalidInput("generate_sbm: expected homophily of class " +
                         std::to_string(c) + " does not exceed 1/classes");
    }
  }

  // Equal-sized contiguous label blocks (remainder spread over the first
  // classes).
  std::vector<int> labels(cfg.n);
  {
    const std::size_t base = cfg.n / static_cast<std::size_t>(cfg.classes);
    const std::size_t extra = cfg.n % static_cast<std::size_t>(cfg.classes);
    std::size_t at = 0;
    for (int c = 0; c < cfg.classes; ++c) {
      const std::size_t block =
          base + (static_cast<std::size_t>(c) < extra ? 1 : 0);
      for (std::size_t k = 0; k < block; ++k) labels[at++] = c;
    }
  }

  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  DenseMatrix adj(cfg.n, cfg.n, 0.0);
  for (std::size_t i = 0; i < cfg.n; ++i) {
    for (std::size_t j = i + 1; j < cfg.n; ++j) {
      const double p = labels[i] == labels[j] ? cfg.p_in : cfg.p_out;
      if (unit(rng) < p) {
        adj(i, j) = 1.0;
        adj(j, i) = 1.0;
      }
    }
  }

  const double uniform_part =
      (1.0 - cfg.noise_p) / static_cast<double>(cfg.classes);
  DenseMatrix x(cfg.n, static_cast<std::size_t>(cfg.classes), uniform_part);
  for (std::size_t i = 0; i < cfg.n; ++i) {
    x(i, static_cast<std::size_t>(labels[i])) += cfg.noise_p;
  }

  return make_graph(std::move(adj), std::move(x), std::move(labels),
                    cfg.classes);
}

SplitMask make_split(std::size_t n, std::array<double, 3> ratios,
                     std::uint64_t seed) {
  double sum = 0.0;
  for (double r : ratios) {
    if (r < 0.0) throw InvalidInput("make_split: negative ratio");
    sum += r;
  }
  if (sum > 1.0 + 1e-9) throw InvalidInput("make_split: ratios sum above 1");

  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::mt19937_64 rng(seed);
  std::shuffle(perm.begin(), perm.end(), rng);

  const std::size_t n_train =
      static_cast<std::size_t>(std::floor(ratios[0] * static_cast<double>(n)));
  const std::size_t n_val =
      static_cast<std::size_t>(std::floor(ratios[1] * static_cast<double>(n)));
  std::size_t n_test;
  if (std::abs(sum - 1.0) <= 1e-9) {
    n_test = n - n_train - n_val;  // remainder to test
  } else {
    n_test = std::min(
        n - n_train - n_val,
        static_cast<std::size_t>(
            std::floor(ratios[2] * static_cast<double>(n))));
  }

  SplitMask mask;
  mask.train.assign(perm.begin(), perm.begin() + n_train);
  mask.val.assign(perm.begin() + n_train, perm.begin() + n_train + n_val);
  mask.test.assign(perm.begin() + n_train + n_val,
                   perm.begin() + n_train + n_val + n_test);
  std::sort(mask.train.begin(), mask.train.end());
  std::sort(mask.val.begin(), mask.val.end());
  std::sort(mask.test.begin(), mask.test.end());
  return mask;
}

SplitMask make_split(std::size_t n, std::uint64_t seed) {
  return make_split(n, {0.1, 0.1, 0.8}, seed);
}

Graph largest_connected_component(const Graph& g) {
  std::vector<int> component(g.n, -1);
  int comp_count = 0;
  for (std::size_t start = 0; start < g.n; ++start) {
    if (component[start] >= 0) continue;
    const int c = comp_count++;
    std::deque<std::size_t> queue{start};
    component[start] = c;
    while (!queue.empty()) {
      const std::size_t u = queue.front();
      queue.pop_front();
      for (std::size_t v = 0; v < g.n; ++v) {
        if (g.adjacency(u, v) != 0.0 && component[v] < 0) {
          component[v] = c;
          queue.push_back(v);
        }
      }
    }
  }
  std::vector<std::size_t> sizes(comp_count, 0);
  for (int c : component) ++sizes[static_cast<std::size_t>(c)];
  const int keep = static_cast<int>(
      std::max_element(sizes.begin(), sizes.end()) - sizes.begin());

  std::vector<std::size_t> nodes;
  for (std::size_t i = 0; i < g.n; ++i) {
    if (component[i] == keep) nodes.push_back(i);
  }
  const std::size_t m = nodes.size();
  DenseMatrix adj(m, m, 0.0);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      adj(a, b) = g.adjacency(nodes[a], nodes[b]);
    }
  }
  std::optional<DenseMatrix> features;
  if (g.features) {
    DenseMatrix x(m, g.features->cols(), 0.0);
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t j = 0; j < g.features->cols(); ++j) {
        x(a, j) = (*g.features)(nodes[a], j);
      }
    }
    features = std::move(x);
  }
  std::optional<std::vector<int>> labels;
  if (g.labels) {
    std::vector<int> y(m);
    for (std::size_t a = 0; a < m; ++a) y[a] = (*g.labels)[nodes[a]];
    labels = std::move(y);
  }
  return make_graph(std::move(adj), std::move(features), std::move(labels),
                    g.class_count);
}

}  // namespace hosl
