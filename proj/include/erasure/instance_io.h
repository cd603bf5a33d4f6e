// Copyright 2026 The Erasure Cost Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// JSON instance files.
//
//   {
//     "format": "erasure-instance/1",
//     "x_size": 3, "y_size": 2, "xhat_size": 3,
//     "p_xy": [["1/3", 0], [0, "1/3"], [0, "1/3"]],
//     "cost": "hamming",
//     "channel": [[...], ...],                       (optional)
//     "labels": {"x": [...], "y": [...], "xhat": [...]}  (optional)
//   }
//
// Matrix entries are JSON numbers or strings holding a decimal ("0.25") or a
// ratio of integers ("1/6"); ratios become the correctly rounded quotient.
// Instead of "p_xy" a file may give "p_x" together with "p_y_given_x".
// "cost" is a matrix or the string "hamming".

#ifndef ERASURE_INSTANCE_IO_H_
#define ERASURE_INSTANCE_IO_H_

#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "erasure/prob_core.h"
#include "erasure/solver.h"

namespace erasure {

inline constexpr char kInstanceFormat[] = "erasure-instance/1";

struct SymbolLabels {
  std::vector<std::string> x;
  std::vector<std::string> y;
  std::vector<std::string> xhat;
};

struct InstanceFile {
  Matrix p_xy;
  Matrix cost;
  std::optional<Matrix> channel;
  SymbolLabels labels;
};

// Parses a decimal or "a/b" ratio string.
absl::StatusOr<double> ParseProbability(const std::string& text);

absl::StatusOr<InstanceFile> ParseInstanceJson(const std::string& text);
std::string SerializeInstanceJson(const InstanceFile& file);

absl::StatusOr<InstanceFile> ReadInstanceFile(const std::string& path);
absl::Status WriteInstanceFile(const std::string& path,
                               const InstanceFile& file);

// Validates the matrices into an ErasureInstance.
absl::StatusOr<ErasureInstance> ToInstance(const InstanceFile& file);

}  // namespace erasure

#endif  // ERASURE_INSTANCE_IO_H_
