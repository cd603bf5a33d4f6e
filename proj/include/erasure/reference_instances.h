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

// Small named instances used by the CLI self-check and the test suites.

#ifndef ERASURE_REFERENCE_INSTANCES_H_
#define ERASURE_REFERENCE_INSTANCES_H_

#include "absl/status/statusor.h"
#include "erasure/prob_core.h"
#include "erasure/solver.h"

namespace erasure {

// X = Y binary with P_X = (1 - p, p), Hamming cost.
absl::StatusOr<ErasureInstance> BinaryIdentityInstance(double p);

// Uniform ternary X, binary Y with P_{Y|X} rows (1,0), (0,1), (0,1), ternary
// Hamming cost. Y is weakly independent of X here, and leakage-free channels
// exist that beat every repeated-symbol overwrite.
ErasureInstance WeaklyIndependentTernaryInstance();

// A leakage-free channel for the ternary instance with rows
// (1/3, 1/3, 1/3), (1/6, 2/3, 1/6), (1/2, 0, 1/2); expected cost 1/2.
Channel SixthsChannel();

}  // namespace erasure

#endif  // ERASURE_REFERENCE_INSTANCES_H_
