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

#ifndef ERASURE_WEAK_INDEPENDENCE_H_
#define ERASURE_WEAK_INDEPENDENCE_H_

#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "erasure/prob_core.h"
#include "erasure/solver.h"

namespace erasure {

// Y is weakly independent of X when the conditional rows P_{Y|X}(.|x) are
// linearly dependent. Rows of massless x-symbols are left out.
struct WeakIndependenceReport {
  bool weakly_independent = false;
  int row_rank = 0;
  // Number of rows examined (x-symbols with P_X(x) > 0).
  int row_count = 0;
  std::vector<double> singular_values;
  double tolerance = 0.0;
  // Some x-symbols had zero mass and were excluded.
  bool excluded_massless_rows = false;
};

// Numerical rank counts singular values above tol * (largest).
absl::StatusOr<WeakIndependenceReport> IsWeaklyIndependent(
    const JointSource& src, double tol = 1e-9);

enum class RepeatedSymbolVerdict {
  // eps = 0 and Y not weakly independent: repeating the Gamma_min symbol
  // attains the minimum cost.
  kOptimal,
  // eps = 0 but Y weakly independent: no optimality guarantee.
  kNotOptimalWeaklyIndependent,
  // eps > 0: no optimality guarantee.
  kNotOptimalPositiveEps,
};

absl::string_view RepeatedSymbolVerdictName(RepeatedSymbolVerdict verdict);

absl::StatusOr<RepeatedSymbolVerdict> ClassifyRepeatedSymbol(
    const ErasureInstance& inst, double eps, double tol = 1e-9);

}  // namespace erasure

#endif  // ERASURE_WEAK_INDEPENDENCE_H_
