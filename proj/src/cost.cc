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

#include "erasure/cost.h"

#include <cmath>
#include <limits>

#include "absl/strings/str_cat.h"
#include "erasure/errors.h"

namespace erasure {

absl::StatusOr<CostMatrix> CostMatrix::Create(Matrix c) {
  if (c.size() == 0) {
    return MakeError(ErrorKind::kInvalidCost, "empty cost matrix");
  }
  for (Eigen::Index i = 0; i < c.rows(); ++i) {
    for (Eigen::Index j = 0; j < c.cols(); ++j) {
      if (!std::isfinite(c(i, j)) || c(i, j) < 0.0) {
        return MakeError(ErrorKind::kInvalidCost,
                         absl::StrCat("cost(", i, ", ", j, ") = ", c(i, j),
                                      " is not finite and non-negative"));
      }
    }
  }
  return CostMatrix(std::move(c));
}

CostMatrix HammingCost(int size) {
  Matrix c = Matrix::Ones(size, size);
  c.diagonal().setZero();
  return *CostMatrix::Create(std::move(c));
}

absl::StatusOr<double> SequenceCost(std::span<const int> x_seq,
                                    std::span<const int> xhat_seq,
                                    const CostMatrix& c) {
  if (x_seq.size() != xhat_seq.size() || x_seq.empty()) {
    return MakeError(ErrorKind::kLengthMismatch,
                     absl::StrCat("sequence lengths ", x_seq.size(), " and ",
                                  xhat_seq.size()));
  }
  double total = 0.0;
  for (size_t i = 0; i < x_seq.size(); ++i) {
    const int x = x_seq[i];
    const int xhat = xhat_seq[i];
    if (x < 0 || x >= c.x_size() || xhat < 0 || xhat >= c.xhat_size()) {
      return MakeError(ErrorKind::kIndexOutOfRange,
                       absl::StrCat("letter ", i, " = (", x, ", ", xhat,
                                    ") outside the cost matrix"));
    }
    total += c(x, xhat);
  }
  return total / static_cast<double>(x_seq.size());
}

absl::StatusOr<double> ExpectedCost(const Distribution& p_x, const Channel& w,
                                    const CostMatrix& c) {
  if (p_x.size() != w.in_size() || w.in_size() != c.x_size() ||
      w.out_size() != c.xhat_size()) {
    return MakeError(ErrorKind::kDimensionMismatch,
                     absl::StrCat("P_X ", p_x.size(), ", channel ", w.in_size(),
                                  "x", w.out_size(), ", cost ", c.x_size(), "x",
                                  c.xhat_size()));
  }
  double total = 0.0;
  for (int x = 0; x < p_x.size(); ++x) {
    double row = 0.0;
    for (int j = 0; j < w.out_size(); ++j) row += w(x, j) * c(x, j);
    total += p_x[x] * row;
  }
  return total;
}

absl::StatusOr<GammaMin> ComputeGammaMin(const Distribution& p_x,
                                         const CostMatrix& c) {
  if (p_x.size() != c.x_size()) {
    return MakeError(ErrorKind::kDimensionMismatch,
                     absl::StrCat("P_X has ", p_x.size(),
                                  " symbols, cost has ", c.x_size(), " rows"));
  }
  GammaMin best{std::numeric_limits<double>::infinity(), 0};
  for (int j = 0; j < c.xhat_size(); ++j) {
    double column = 0.0;
    for (int x = 0; x < p_x.size(); ++x) column += p_x[x] * c(x, j);
    if (column < best.value) best = {column, j};
  }
  return best;
}

Channel PerRowArgminChannel(const CostMatrix& c) {
  Matrix w = Matrix::Zero(c.x_size(), c.xhat_size());
  for (int x = 0; x < c.x_size(); ++x) {
    Eigen::Index j;
    c.matrix().row(x).minCoeff(&j);
    w(x, j) = 1.0;
  }
  return *Channel::Create(std::move(w));
}

double UnconstrainedMinCost(const Distribution& p_x, const CostMatrix& c) {
  double total = 0.0;
  for (int x = 0; x < p_x.size(); ++x) {
    total += p_x[x] * c.matrix().row(x).minCoeff();
  }
  return total;
}

}  // namespace erasure
