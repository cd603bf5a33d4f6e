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

#include "erasure/simplex.h"

#include <limits>
#include <vector>

namespace erasure {
namespace {

// Tableau layout: rows 0..m-1 are constraints, row m is the reduced-cost row.
// Columns 0..cols-1 are variables; column `cols` is the right-hand side.
class Tableau {
 public:
  Tableau(Matrix t, std::vector<int> basis, double tol)
      : t_(std::move(t)), basis_(std::move(basis)), tol_(tol) {}

  int rows() const { return static_cast<int>(t_.rows()) - 1; }
  int rhs() const { return static_cast<int>(t_.cols()) - 1; }
  Matrix& table() { return t_; }
  std::vector<int>& basis() { return basis_; }

  void Pivot(int row, int col) {
    t_.row(row) /= t_(row, col);
    for (Eigen::Index r = 0; r < t_.rows(); ++r) {
      if (r == row) continue;
      const double factor = t_(r, col);
      if (factor != 0.0) t_.row(r) -= factor * t_.row(row);
    }
    basis_[row] = col;
  }

  // Runs Bland-rule iterations over columns [0, allowed).
  LpStatus Optimize(int allowed, int max_pivots, int& pivots) {
    const int m = rows();
    while (true) {
      int enter = -1;
      for (int j = 0; j < allowed; ++j) {
        if (t_(m, j) < -tol_) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return LpStatus::kOptimal;
      if (pivots >= max_pivots) return LpStatus::kPivotLimit;
      int leave = -1;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (int r = 0; r < m; ++r) {
        const double a = t_(r, enter);
        if (a <= tol_) continue;
        const double ratio = t_(r, rhs()) / a;
        if (ratio < best_ratio - tol_ ||
            (ratio <= best_ratio + tol_ && leave >= 0 &&
             basis_[r] < basis_[leave])) {
          if (ratio < best_ratio) best_ratio = ratio;
          leave = r;
        }
      }
      if (leave < 0) return LpStatus::kUnbounded;
      Pivot(leave, enter);
      ++pivots;
    }
  }

 private:
  Matrix t_;
  std::vector<int> basis_;
  double tol_;
};

}  // namespace

LpSolution SolveLinearProgram(const LinearProgram& lp, double tol,
                              int max_pivots) {
  const int m = static_cast<int>(lp.a_eq.rows());
  const int n = static_cast<int>(lp.a_eq.cols());
  LpSolution solution;
  solution.x = Eigen::VectorXd::Zero(n);

  // Phase one: artificials n..n+m-1 start in the basis.
  Matrix t = Matrix::Zero(m + 1, n + m + 1);
  for (int r = 0; r < m; ++r) {
    const double sign = lp.b_eq[r] < 0.0 ? -1.0 : 1.0;
    t.row(r).head(n) = sign * lp.a_eq.row(r);
    t(r, n + r) = 1.0;
    t(r, n + m) = sign * lp.b_eq[r];
  }
  for (int r = 0; r < m; ++r) t.row(m) -= t.row(r);
  for (int r = 0; r < m; ++r) t(m, n + r) = 0.0;

  std::vector<int> basis(m);
  for (int r = 0; r < m; ++r) basis[r] = n + r;
  Tableau tableau(std::move(t), std::move(basis), tol);

  LpStatus status = tableau.Optimize(n + m, max_pivots, solution.pivots);
  if (status == LpStatus::kPivotLimit) {
    solution.status = status;
    return solution;
  }
  if (-tableau.table()(m, n + m) > tol * (1.0 + lp.b_eq.cwiseAbs().sum())) {
    solution.status = LpStatus::kInfeasible;
    return solution;
  }

  // Drive artificials out of the basis; rows where that is impossible are
  // redundant and get dropped.
  std::vector<int> keep;
  for (int r = 0; r < m; ++r) {
    if (tableau.basis()[r] < n) {
      keep.push_back(r);
      continue;
    }
    int col = -1;
    for (int j = 0; j < n; ++j) {
      if (std::abs(tableau.table()(r, j)) > tol) {
        col = j;
        break;
      }
    }
    if (col >= 0) {
      tableau.Pivot(r, col);
      keep.push_back(r);
    }
  }

  // Phase two on the surviving rows, artificial columns removed.
  const int kept = static_cast<int>(keep.size());
  Matrix t2 = Matrix::Zero(kept + 1, n + 1);
  std::vector<int> basis2(kept);
  for (int i = 0; i < kept; ++i) {
    t2.row(i).head(n) = tableau.table().row(keep[i]).head(n);
    t2(i, n) = tableau.table()(keep[i], n + m);
    basis2[i] = tableau.basis()[keep[i]];
  }
  t2.row(kept).head(n) = lp.objective.transpose();
  for (int i = 0; i < kept; ++i) {
    const double cb = lp.objective[basis2[i]];
    if (cb != 0.0) t2.row(kept) -= cb * t2.row(i);
  }
  Tableau phase2(std::move(t2), std::move(basis2), tol);
  status = phase2.Optimize(n, max_pivots, solution.pivots);
  solution.status = status;
  if (status != LpStatus::kOptimal) return solution;

  for (int i = 0; i < kept; ++i) {
    solution.x[phase2.basis()[i]] = phase2.table()(i, n);
  }
  solution.objective = lp.objective.dot(solution.x);
  return solution;
}

}  // namespace erasure
