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

// Dense two-phase simplex for small standard-form linear programs:
//
//   minimize  c^T x   subject to  A x = b,  x >= 0.
//
// Bland's rule is used for both the entering and the leaving variable, so the
// method terminates on the heavily degenerate programs produced by the
// zero-leakage constraints (all right-hand sides zero except row sums).

#ifndef ERASURE_SIMPLEX_H_
#define ERASURE_SIMPLEX_H_

#include "Eigen/Dense"
#include "erasure/prob_core.h"

namespace erasure {

struct LinearProgram {
  Matrix a_eq;
  Eigen::VectorXd b_eq;
  Eigen::VectorXd objective;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kPivotLimit };

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  Eigen::VectorXd x;
  double objective = 0.0;
  int pivots = 0;
};

LpSolution SolveLinearProgram(const LinearProgram& lp, double tol = 1e-9,
                              int max_pivots = 100000);

}  // namespace erasure

#endif  // ERASURE_SIMPLEX_H_
