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

#ifndef ERASURE_COST_H_
#define ERASURE_COST_H_

#include <span>

#include "absl/status/statusor.h"
#include "erasure/prob_core.h"

namespace erasure {

// Per-letter cost c(x, xhat) >= 0, finite.
class CostMatrix {
 public:
  static absl::StatusOr<CostMatrix> Create(Matrix c);

  int x_size() const { return static_cast<int>(c_.rows()); }
  int xhat_size() const { return static_cast<int>(c_.cols()); }
  double operator()(int x, int xhat) const { return c_(x, xhat); }
  const Matrix& matrix() const { return c_; }
  double max_entry() const { return c_.maxCoeff(); }

 private:
  explicit CostMatrix(Matrix c) : c_(std::move(c)) {}

  Matrix c_;
};

// c(x, xhat) = 1{x != xhat} on a square alphabet.
CostMatrix HammingCost(int size);

// (1/n) sum_i c(x_i, xhat_i).
absl::StatusOr<double> SequenceCost(std::span<const int> x_seq,
                                    std::span<const int> xhat_seq,
                                    const CostMatrix& c);

// E[c(X, Xhat)] = sum_{x, xhat} P_X(x) W(xhat|x) c(x, xhat).
absl::StatusOr<double> ExpectedCost(const Distribution& p_x, const Channel& w,
                                    const CostMatrix& c);

struct GammaMin {
  double value;
  int symbol;
};

// min over xhat of E[c(X, xhat)]: the cost of overwriting every letter with
// the same symbol. Ties go to the smallest index.
absl::StatusOr<GammaMin> ComputeGammaMin(const Distribution& p_x,
                                         const CostMatrix& c);

// Channel mapping each x to its cheapest xhat (smallest index on ties), and
// the cost sum_x P_X(x) min_xhat c(x, xhat) it achieves.
Channel PerRowArgminChannel(const CostMatrix& c);
double UnconstrainedMinCost(const Distribution& p_x, const CostMatrix& c);

}  // namespace erasure

#endif  // ERASURE_COST_H_
