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

#include "hosl/checkpoint.hpp"

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <vector>

#include "hosl/error.hpp"

namespace hosl {
namespace {

constexpr char kMagic[8] = {'H', 'O', 'S', 'L', 'G', 'C', 'N', '1'};

void write_matrix_binary(std::ofstream& out, const DenseMatrix& m) {
  const std::uint64_t rows = m.rows();
  const std::uint64_t cols = m.cols();
  out.write(reinterpret_cast<const char*>(&rows), sizeof rows);
  out.write(reinterpret_cast<const char*>(&cols), sizeof cols);
  out.write(reinterpret_cast<const char*>(m.data().data()),
            static_cast<std::streamsize>(m.size() * sizeof(double)));
}

DenseMatrix read_matrix_binary(std::ifstream& in, const std::string& path) {
  std::uint64_t rows = 0;
  std::uint64_t cols = 0;
  in.read(reinterpret_cast<char*>(&rows), sizeof rows);
  in.read(reinterpret_cast<char*>(&cols), sizeof cols);
  if (!in) throw ParseError(path + ": truncated checkpoint header");
  std::vector<double> data(rows * cols);
  in.read(reinterpret_cast<char*>(data.data()),
          static_cast<std::streamsize>(data.size() * sizeof(double)));
  if (!in) throw ParseError(path + ": truncated checkpoint payload");
  return DenseMatrix(rows, cols, std::move(data));
}

void write_matrix_csv(std::ofstream& out, const char* name,
                      const DenseMatrix& m) {
  out << name << ',' << m.rows() << ',' << m.cols() << '\n';
  char buf[64];
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", m(i, j));
      out << (j == 0 ? "" : ",") << buf;
    }
    out << '\n';
  }
}

DenseMatrix read_matrix_csv(std::ifstream& in, const char* name,
                            const std::string& path) {
  std::string line;
  if (!std::getline(in, line)) {
    throw ParseError(path + ": missing `" + name + "` header");
  }
  std::istringstream header(line);
  std::string tag;
  std::getline(header, tag, ',');
  if (tag != name) throw ParseError(path + ": expected `" + name + "` block");
  std::size_t rows = 0;
  std::size_t cols = 0;
  char comma = 0;
  if (!(header >> rows >> comma >> cols)) {
    throw ParseError(path + ": bad `" + name + "` shape header");
  }
  DenseMatrix m(rows, cols, 0.0);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!std::getline(in, line)) {
      throw ParseError(path + ": truncated `" + name + "` block");
    }
    std::istringstream row(line);
    std::string field;
    for (std::size_t j = 0; j < cols; ++j) {
      if (!std::getline(row, field, ',')) {
        throw ParseError(path + ": short row in `" + name + "`");
      }
      m(i, j) = std::stod(field);
    }
  }
  return m;
}

}  // namespace

CheckpointFormat checkpoint_format_from_string(const std::string& name) {
  if (name == "bin" || name == "binary") return CheckpointFormat::kBinary;
  if (name == "csv") return CheckpointFormat::kCsv;
  throw InvalidInput("unknown checkpoint format: " + name);
}

void save_checkpoint(const GcnParams& params, const std::string& path,
                     CheckpointFormat format) {
  if (format == CheckpointFormat::kBinary) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidInput("cannot write file: " + path);
    out.write(kMagic, sizeof kMagic);
    write_matrix_binary(out, params.w1);
    write_matrix_binary(out, params.w2);
  } else {
    std::ofstream out(path);
    if (!out) throw InvalidInput("cannot write file: " + path);
    write_matrix_csv(out, "w1", params.w1);
    write_matrix_csv(out, "w2", params.w2);
  }
}

GcnParams load_checkpoint(const std::string& path, CheckpointFormat format) {
  GcnParams params;
  if (format == CheckpointFormat::kBinary) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidInput("cannot open file: " + path);
    char magic[8];
    in.read(magic, sizeof magic);
    if (!in || std::memcmp(magic, kMagic, sizeof kMagic) != 0) {
      throw ParseError(path + ": bad checkpoint magic");
    }
    params.w1 = read_matrix_binary(in, path);
    params.w2 = read_matrix_binary(in, path);
  } else {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open file: " + path);
    params.w1 = read_matrix_csv(in, "w1", path);
    params.w2 = read_matrix_csv(in, "w2", path);
  }
  if (params.w1.cols() != params.w2.rows()) {
    throw ParseError(path + ": inconsistent layer shapes");
  }
  params.hidden = params.w1.cols();
  return params;
}

}  // namespace hosl
