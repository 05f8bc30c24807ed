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

#ifndef HOSL_CHECKPOINT_HPP_
#define HOSL_CHECKPOINT_HPP_

#include <string>

#include "hosl/gcn.hpp"

namespace hosl {

enum class CheckpointFormat { kBinary, kCsv };

CheckpointFormat checkpoint_format_from_string(const std::string& name);

// Binary layout (little-endian): 8-byte magic "HOSLGCN1", then for each of
// W1, W2: uint64 rows, uint64 cols, rows*cols float64 row-major.
// CSV layout: a `w1,rows,cols` header line, `rows` comma-separated value
// lines, then the same for w2. Both round-trip bit-exactly on one platform.
void save_checkpoint(const GcnParams& params, const std::string& path,
                     CheckpointFormat format);
GcnParams load_checkpoint(const std::string& path, CheckpointFormat format);

}  // namespace hosl

#endif  // HOSL_CHECKPOINT_HPP_
