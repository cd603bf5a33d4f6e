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

#include "erasure/solver.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <vector>

#include "absl/strings/str_cat.h"
#include "erasure/errors.h"
#include "erasure/simplex.h"

namespace erasure {
namespace {

// Stand-in for log(0) in gradients at boundary points; only reachable from
// Frank-Wolfe iterates, which live on faces of the channel polytope.
constexpr double kLogFloor = -700.0;

// Precomputed quantities shared by every evaluation on one instance.
class Problem {
 public:
  explicit Problem(const ErasureInstance& inst)
      : inst_(inst),
        nx_(inst.x_size()),
        ny_(inst.y_size()),
        nk_(inst.xhat_size()),
        pxy_(inst.source().matrix()),
        cost_(inst.cost().matrix()) {
    px_.resize(nx_);
    py_.resize(ny_);
    for (int x = 0; x < nx_; ++x) px_[x] = inst.p_x()[x];
    for (int y = 0; y < ny_; ++y) py_[y] = inst.source().marginal_y()[y];
    gamma_ = *ComputeGammaMin(inst.p_x(), inst.cost());
  }

  int nx() const { return nx_; }
  int nk() const { return nk_; }
  double px(int x) const { return px_[x]; }
  bool active(int x) const { return px_[x] > 0.0; }
  const GammaMin& gamma() const { return gamma_; }
  const Matrix& cost() const { return cost_; }

  double Cost(const Matrix& w) const {
    double total = 0.0;
    for (int x = 0; x < nx_; ++x) {
      if (!active(x)) continue;
      total += px_[x] * cost_.row(x).dot(w.row(x));
    }
    return total;
  }

  Matrix JointYXhat(const Matrix& w) const {
    return pxy_.transpose() * w;
  }

  double Leakage(const Matrix& w) const {
    return MutualInformationOf(JointYXhat(w));
  }

  // Per-row gradient of I(Y; Xhat) divided by P_X(x):
  //   s(x, k) = sum_y P(y|x) log(P(y, k) / (P(y) P(k))).
  // Columns with no mass use the one-sided limit obtained by moving mass into
  // them from row x alone.
  Matrix LeakageScore(const Matrix& w) const {
    Matrix joint = JointYXhat(w);
    Eigen::RowVectorXd q = joint.colwise().sum();
    Matrix score = Matrix::Zero(nx_, nk_);
    for (int x = 0; x < nx_; ++x) {
      if (!active(x)) continue;
      for (int k = 0; k < nk_; ++k) {
        double s = 0.0;
        for (int y = 0; y < ny_; ++y) {
          const double pyx = pxy_(x, y) / px_[x];
          if (pyx <= 0.0) continue;
          double log_ratio;
          if (q[k] <= 0.0) {
            log_ratio = std::log(pyx / py_[y]);
          } else if (joint(y, k) <= 0.0) {
            log_ratio = kLogFloor;
          } else {
            log_ratio = std::log(joint(y, k) / (py_[y] * q[k]));
          }
          s += pyx * log_ratio;
        }
        score(x, k) = s;
      }
    }
    return score;
  }

  // sum_x P_X(x) [ <g_x, w_x> - min_k g(x, k) ] for g = c + lambda * score.
  double FrankWolfeGap(const Matrix& w, const Matrix& g) const {
    double gap = 0.0;
    for (int x = 0; x < nx_; ++x) {
      if (!active(x)) continue;
      gap += px_[x] * (g.row(x).dot(w.row(x)) - g.row(x).minCoeff());
    }
    return std::max(gap, 0.0);
  }

  // Gives massless rows the Gamma_min point mass; they affect neither cost
  // nor leakage.
  Matrix Finalize(Matrix w) const {
    for (int x = 0; x < nx_; ++x) {
      if (active(x)) {
        for (int k = 0; k < nk_; ++k) w(x, k) = std::max(w(x, k), 0.0);
        w.row(x) /= w.row(x).sum();
      } else {
        w.row(x).setZero();
        w(x, gamma_.symbol) = 1.0;
      }
    }
    return w;
  }

  Matrix Uniform() const {
    return Matrix::Constant(nx_, nk_, 1.0 / static_cast<double>(nk_));
  }

  Matrix ConstantGamma() const {
    Matrix w = Matrix::Zero(nx_, nk_);
    w.col(gamma_.symbol).setOnes();
    return w;
  }

  const ErasureInstance& instance() const { return inst_; }

 private:
  const ErasureInstance& inst_;
  int nx_, ny_, nk_;
  Matrix pxy_;
  Matrix cost_;
  std::vector<double> px_, py_;
  GammaMin gamma_;
};

absl::Status ValidateConfig(const SolverConfig& cfg) {
  if (!(cfg.optimality_tol > 0.0) ||
      !(cfg.lp_tol > 0.0) || cfg.max_iters <= 0 || cfg.max_bisections <= 0) {
    return MakeError(ErrorKind::kConfigError,
                     "tolerances and iteration budgets must be positive");
  }
  return absl::OkStatus();
}

// Sum over active rows of P_X(x) KL(a_x || b_x).
double WeightedKl(const Problem& prob, const Matrix& a, const Matrix& b) {
  double total = 0.0;
  for (int x = 0; x < prob.nx(); ++x) {
    if (!prob.active(x)) continue;
    double kl = 0.0;
    for (int k = 0; k < prob.nk(); ++k) {
      if (a(x, k) > 0.0) kl += a(x, k) * std::log(a(x, k) / b(x, k));
    }
    total += prob.px(x) * kl;
  }
  return total;
}

// w_new(x, .) proportional to w(x, .) exp(-step g(x, .)).
Matrix MirrorStep(const Problem& prob, const Matrix& w, const Matrix& g,
                  double step) {
  Matrix out = w;
  for (int x = 0; x < prob.nx(); ++x) {
    if (!prob.active(x)) continue;
    double shift = std::numeric_limits<double>::infinity();
    for (int k = 0; k < prob.nk(); ++k) {
      if (w(x, k) > 0.0) shift = std::min(shift, step * g(x, k));
    }
    double total = 0.0;
    for (int k = 0; k < prob.nk(); ++k) {
      // Underflow would drop a symbol from the support for good.
      out(x, k) = w(x, k) > 0.0
                      ? std::max(w(x, k) * std::exp(shift - step * g(x, k)),
                                 std::numeric_limits<double>::min())
                      : 0.0;
      total += out(x, k);
    }
    out.row(x) /= total;
  }
  return out;
}

PenalizedSolution MakePenalized(const Problem& prob, const Matrix& w,
                                double lambda, double gap, int iters,
                                bool converged) {
  Matrix final_w = prob.Finalize(w);
  const double cost = prob.Cost(final_w);
  const double leak = prob.Leakage(final_w);
  return PenalizedSolution{.channel = *Channel::Create(final_w),
                           .cost = cost,
                           .leakage = leak,
                           .value = cost + lambda * leak,
                           .gap = gap,
                           .iterations = iters,
                           .converged = converged};
}

// The lambda-scaled leakage is lambda-smooth relative to the weighted
// negative entropy of the rows, so a step of 1/lambda always descends; the
// step grows while a sufficient-decrease test keeps passing.
PenalizedSolution MirrorDescent(const Problem& prob, double lambda,
                                const SolverConfig& cfg, Matrix w) {
  const double min_step = 1.0 / lambda;
  const double max_step = 1e12 * min_step;
  double step = min_step;
  double leak = prob.Leakage(w);
  double gap = std::numeric_limits<double>::infinity();
  int iter = 0;
  for (; iter < cfg.max_iters; ++iter) {
    Matrix score = prob.LeakageScore(w);
    Matrix g = prob.cost() + lambda * score;
    gap = prob.FrankWolfeGap(w, g);
    if (gap <= cfg.optimality_tol) break;

    step = std::min(2.0 * step, max_step);
    while (true) {
      Matrix candidate = MirrorStep(prob, w, g, step);
      const double cand_leak = prob.Leakage(candidate);
      if (step <= min_step) {
        w = std::move(candidate);
        leak = cand_leak;
        break;
      }
      // Upper model of lambda * I at `candidate`.
      double linear = 0.0;
      for (int x = 0; x < prob.nx(); ++x) {
        if (!prob.active(x)) continue;
        linear += prob.px(x) * score.row(x).dot(candidate.row(x) - w.row(x));
      }
      const double model = lambda * (leak + linear) +
                           WeightedKl(prob, candidate, w) / step;
      if (lambda * cand_leak <= model + 1e-15) {
        w = std::move(candidate);
        leak = cand_leak;
        break;
      }
      step = std::max(step * 0.5, min_step);
    }
  }
  const bool converged = gap <= cfg.optimality_tol;
  return MakePenalized(prob, w, lambda, gap, iter, converged);
}

PenalizedSolution FrankWolfe(const Problem& prob, double lambda,
                             const SolverConfig& cfg, Matrix w) {
  double gap = std::numeric_limits<double>::infinity();
  int iter = 0;
  auto directional = [&](const Matrix& at, const Matrix& dir) {
    Matrix g = prob.cost() + lambda * prob.LeakageScore(at);
    double d = 0.0;
    for (int x = 0; x < prob.nx(); ++x) {
      if (prob.active(x)) d += prob.px(x) * g.row(x).dot(dir.row(x));
    }
    return d;
  };
  for (; iter < cfg.max_iters; ++iter) {
    Matrix g = prob.cost() + lambda * prob.LeakageScore(w);
    gap = prob.FrankWolfeGap(w, g);
    if (gap <= cfg.optimality_tol) break;
    Matrix vertex = Matrix::Zero(prob.nx(), prob.nk());
    for (int x = 0; x < prob.nx(); ++x) {
      Eigen::Index k;
      g.row(x).minCoeff(&k);
      vertex(x, k) = 1.0;
    }
    Matrix dir = vertex - w;
    // The objective is convex along the segment; bisect on its slope.
    double lo = 0.0, hi = 1.0;
    if (directional(vertex, dir) > 0.0) {
      for (int i = 0; i < 60; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (directional(w + mid * dir, dir) > 0.0) {
          hi = mid;
        } else {
          lo = mid;
        }
      }
    } else {
      lo = 1.0;
    }
    w += lo * dir;
  }
  return MakePenalized(prob, w, lambda, gap, iter, gap <= cfg.optimality_tol);
}

PenalizedSolution SolvePenalizedImpl(const Problem& prob, double lambda,
                                     const SolverConfig& cfg,
                                     const Matrix* start) {
  if (cfg.inner_method == InnerMethod::kFrankWolfe) {
    return FrankWolfe(prob, lambda, cfg,
                      start != nullptr ? *start : prob.ConstantGamma());
  }
  // Mirror descent needs strictly positive rows.
  Matrix init = prob.Uniform();
  if (start != nullptr) init = (1.0 - 1e-3) * (*start) + 1e-3 * init;
  return MirrorDescent(prob, lambda, cfg, std::move(init));
}

// Largest t in [0, 1] with I((1-t) feasible + t other) <= eps. Leakage is
// convex along the segment, so the feasible part is an interval containing 0.
Matrix MixTowards(const Problem& prob, const Matrix& feasible,
                  const Matrix& other, double eps) {
  if (prob.Leakage(other) <= eps) return other;
  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < 100; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (prob.Leakage((1.0 - mid) * feasible + mid * other) <= eps) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return (1.0 - lo) * feasible + lo * other;
}

}  // namespace

absl::string_view SolverStatusName(SolverStatus status) {
  switch (status) {
    case SolverStatus::kConverged:
      return "Converged";
    case SolverStatus::kIterationCap:
      return "IterationCap";
    case SolverStatus::kInfeasible:
      return "Infeasible";
  }
  return "Unknown";
}

absl::StatusOr<ErasureInstance> ErasureInstance::Create(JointSource source,
                                                        CostMatrix cost) {
  if (cost.x_size() != source.x_size()) {
    return MakeError(ErrorKind::kDimensionMismatch,
                     absl::StrCat("cost has ", cost.x_size(),
                                  " rows, source has ", source.x_size(),
                                  " x-symbols"));
  }
  return ErasureInstance(std::move(source), std::move(cost));
}

absl::StatusOr<PenalizedSolution> SolvePenalized(const ErasureInstance& inst,
                                                 double lambda,
                                                 const SolverConfig& cfg,
                                                 const Channel* start) {
  if (absl::Status s = ValidateConfig(cfg); !s.ok()) return s;
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    return MakeError(ErrorKind::kDomainError,
                     absl::StrCat("multiplier ", lambda, " must be positive"));
  }
  if (start != nullptr && (start->in_size() != inst.x_size() ||
                           start->out_size() != inst.xhat_size())) {
    return MakeError(ErrorKind::kDimensionMismatch, "start channel shape");
  }
  Problem prob(inst);
  std::optional<Matrix> init;
  if (start != nullptr) init = start->matrix();
  return SolvePenalizedImpl(prob, lambda, cfg, init ? &*init : nullptr);
}

absl::StatusOr<SolverResult> SolveZeroLeakage(const ErasureInstance& inst,
                                              const SolverConfig& cfg) {
  if (absl::Status s = ValidateConfig(cfg); !s.ok()) return s;
  Problem prob(inst);
  const JointSource& src = inst.source();
  const int nk = inst.xhat_size();

  std::vector<int> rows;
  for (int x = 0; x < inst.x_size(); ++x) {
    if (prob.active(x)) rows.push_back(x);
  }
  std::vector<int> ys;
  for (int y = 0; y < inst.y_size(); ++y) {
    if (src.marginal_y()[y] > 0.0) ys.push_back(y);
  }
  // One y-constraint per xhat is implied by the others.
  if (!ys.empty()) ys.pop_back();

  const int n_rows = static_cast<int>(rows.size());
  const int n_vars = n_rows * nk;
  const int n_cons = n_rows + static_cast<int>(ys.size()) * nk;
  LinearProgram lp{Matrix::Zero(n_cons, n_vars),
                   Eigen::VectorXd::Zero(n_cons),
                   Eigen::VectorXd::Zero(n_vars)};
  for (int i = 0; i < n_rows; ++i) {
    for (int k = 0; k < nk; ++k) {
      lp.a_eq(i, i * nk + k) = 1.0;
      lp.objective[i * nk + k] = prob.px(rows[i]) * inst.cost()(rows[i], k);
    }
    lp.b_eq[i] = 1.0;
  }
  int con = n_rows;
  for (int y : ys) {
    for (int k = 0; k < nk; ++k, ++con) {
      for (int i = 0; i < n_rows; ++i) {
        const int x = rows[i];
        lp.a_eq(con, i * nk + k) =
            src(x, y) - src.marginal_y()[y] * prob.px(x);
      }
    }
  }

  LpSolution sol = SolveLinearProgram(lp, cfg.lp_tol);
  Matrix w;
  SolverStatus status = SolverStatus::kConverged;
  if (sol.status == LpStatus::kOptimal) {
    w = Matrix::Zero(inst.x_size(), nk);
    for (int i = 0; i < n_rows; ++i) {
      for (int k = 0; k < nk; ++k) w(rows[i], k) = sol.x[i * nk + k];
    }
    w = prob.Finalize(std::move(w));
  } else {
    // The polytope always holds the constant channels; only a numerical
    // breakdown lands here. Fall back to the Gamma_min channel.
    w = prob.ConstantGamma();
    status = SolverStatus::kIterationCap;
  }
  const double cost = prob.Cost(w);
  return SolverResult{.min_cost = cost,
                      .channel = *Channel::Create(w),
                      .leakage = prob.Leakage(w),
                      .status = status,
                      .duality_gap = 0.0,
                      .iterations = sol.pivots,
                      .lambda = 0.0};
}

absl::StatusOr<SolverResult> SolveMinCost(const ErasureInstance& inst,
                                          double eps_per_letter,
                                          const SolverConfig& cfg) {
  if (absl::Status s = ValidateConfig(cfg); !s.ok()) return s;
  if (!(eps_per_letter >= 0.0) || std::isnan(eps_per_letter)) {
    return MakeError(ErrorKind::kDomainError,
                     absl::StrCat("leakage budget ", eps_per_letter,
                                  " must be non-negative"));
  }
  if (eps_per_letter == 0.0) return SolveZeroLeakage(inst, cfg);

  Problem prob(inst);
  const double eps = eps_per_letter;

  // Unconstrained minimizer: feasible whenever eps' >= I(X;Y) by data
  // processing, and often earlier.
  Matrix unconstrained = prob.Finalize(PerRowArgminChannel(inst.cost()).matrix());
  const double lower_bound = prob.Cost(unconstrained);
  if (eps >= MutualInformation(inst.source()) ||
      prob.Leakage(unconstrained) <= eps) {
    return SolverResult{.min_cost = lower_bound,
                        .channel = *Channel::Create(unconstrained),
                        .leakage = prob.Leakage(unconstrained),
                        .status = SolverStatus::kConverged,
                        .duality_gap = 0.0,
                        .iterations = 0,
                        .lambda = 0.0};
  }

  absl::StatusOr<SolverResult> anchor = SolveZeroLeakage(inst, cfg);
  if (!anchor.ok()) return anchor.status();

  int total_iters = anchor->iterations;
  double best_dual = lower_bound;

  auto solve = [&](double lambda, const Matrix* start) {
    PenalizedSolution sol = SolvePenalizedImpl(prob, lambda, cfg, start);
    total_iters += sol.iterations;
    best_dual = std::max(best_dual, sol.value - sol.gap - lambda * eps);
    return sol;
  };

  // lo: infeasible side (starts at the unconstrained minimizer, lambda = 0);
  // hi: feasible side.
  double lambda_lo = 0.0;
  Matrix w_lo = unconstrained;
  double lambda_hi = 1.0;
  std::optional<PenalizedSolution> hi;
  const Matrix* warm = nullptr;
  Matrix warm_store;
  for (int i = 0; i < 40; ++i) {
    PenalizedSolution sol = solve(lambda_hi, warm);
    warm_store = sol.channel.matrix();
    warm = &warm_store;
    if (sol.leakage <= eps) {
      hi = std::move(sol);
      break;
    }
    lambda_lo = lambda_hi;
    w_lo = sol.channel.matrix();
    lambda_hi *= 4.0;
  }

  Matrix w_hi = hi ? hi->channel.matrix() : anchor->channel.matrix();
  const Matrix& anchor_w = anchor->channel.matrix();

  // Slide from each feasible point towards the infeasible one until the
  // budget is exhausted; the cost is linear along the way.
  Matrix best;
  double best_cost = 0.0;
  auto polish = [&] {
    best = anchor_w;
    best_cost = anchor->min_cost;
    for (const Matrix* feasible : {&std::as_const(w_hi), &anchor_w}) {
      if (prob.Cost(*feasible) < best_cost) {
        best = *feasible;
        best_cost = prob.Cost(*feasible);
      }
      Matrix mixed = prob.Finalize(MixTowards(prob, *feasible, w_lo, eps));
      const double c = prob.Cost(mixed);
      if (c < best_cost && prob.Leakage(mixed) <= eps) {
        best_cost = c;
        best = std::move(mixed);
      }
    }
  };
  polish();
  if (hi) {
    for (int i = 0; i < cfg.max_bisections; ++i) {
      if (best_cost - best_dual <= cfg.optimality_tol) break;
      if (lambda_lo > 0.0 && lambda_hi / lambda_lo - 1.0 < 1e-12) break;
      const double mid = lambda_lo > 0.0 ? std::sqrt(lambda_lo * lambda_hi)
                                         : 0.5 * lambda_hi;
      PenalizedSolution sol = solve(mid, &w_hi);
      if (sol.leakage <= eps) {
        lambda_hi = mid;
        w_hi = sol.channel.matrix();
      } else {
        lambda_lo = mid;
        w_lo = sol.channel.matrix();
      }
      polish();
    }
  } else {
    lambda_hi = std::numeric_limits<double>::infinity();
  }

  const double gap = std::max(0.0, best_cost - best_dual);
  const SolverStatus status = gap > cfg.optimality_tol
                                  ? SolverStatus::kIterationCap
                                  : SolverStatus::kConverged;
  return SolverResult{.min_cost = best_cost,
                      .channel = *Channel::Create(best),
                      .leakage = prob.Leakage(best),
                      .status = status,
                      .duality_gap = gap,
                      .iterations = total_iters,
                      .lambda = std::isfinite(lambda_hi) ? lambda_hi : 0.0};
}

absl::StatusOr<double> BinaryClosedForm(double p, double eps, int n) {
  if (!(p >= 0.0 && p <= 0.5)) {
    return MakeError(ErrorKind::kDomainError,
                     absl::StrCat("p = ", p, " must lie in [0, 1/2]"));
  }
  if (!(eps >= 0.0) || n < 1) {
    return MakeError(ErrorKind::kDomainError,
                     absl::StrCat("need eps >= 0 and n >= 1, got ", eps, ", ",
                                  n));
  }
  absl::StatusOr<double> h = BinaryEntropy(p);
  if (!h.ok()) return h.status();
  const double residual = std::max(0.0, *h - eps / static_cast<double>(n));
  return BinaryEntropyInverse(std::min(residual, std::numbers::ln2));
}

absl::StatusOr<OracleResult> BruteForceOracle(const ErasureInstance& inst,
                                              double eps_per_letter,
                                              int grid_steps) {
  if (inst.x_size() * inst.xhat_size() > 9 || grid_steps > 48 ||
      grid_steps < 1) {
    return MakeError(ErrorKind::kScaleGuard,
                     absl::StrCat("oracle limited to |X||Xhat| <= 9 and grid "
                                  "<= 48, got ",
                                  inst.x_size(), "x", inst.xhat_size(),
                                  " grid ", grid_steps));
  }
  if (!(eps_per_letter >= 0.0)) {
    return MakeError(ErrorKind::kDomainError, "leakage budget is negative");
  }
  Problem prob(inst);
  const int nk = inst.xhat_size();
  const int nx = inst.x_size();
  const double budget = eps_per_letter + 1e-9;

  // All rows of the simplex grid.
  std::vector<std::vector<double>> grid_rows;
  std::vector<int> parts(nk, 0);
  auto enumerate = [&](auto&& self, int pos, int left) -> void {
    if (pos == nk - 1) {
      parts[pos] = left;
      std::vector<double> row(nk);
      for (int k = 0; k < nk; ++k) row[k] = double(parts[k]) / grid_steps;
      grid_rows.push_back(std::move(row));
      return;
    }
    for (int v = left; v >= 0; --v) {
      parts[pos] = v;
      self(self, pos + 1, left - v);
    }
  };
  enumerate(enumerate, 0, grid_steps);

  // Cheapest completion of rows x.. for pruning.
  std::vector<double> tail_bound(nx + 1, 0.0);
  for (int x = nx - 1; x >= 0; --x) {
    tail_bound[x] = tail_bound[x + 1] +
                    prob.px(x) * inst.cost().matrix().row(x).minCoeff();
  }
  std::vector<std::vector<double>> row_cost(nx);
  for (int x = 0; x < nx; ++x) {
    for (const auto& row : grid_rows) {
      double c = 0.0;
      for (int k = 0; k < nk; ++k) c += row[k] * inst.cost()(x, k);
      row_cost[x].push_back(prob.px(x) * c);
    }
  }

  Matrix best = prob.ConstantGamma();
  double best_cost = prob.Cost(best);
  Matrix w = Matrix::Zero(nx, nk);
  auto search = [&](auto&& self, int x, double partial) -> void {
    if (x == nx) {
      if (partial < best_cost && prob.Leakage(w) <= budget) {
        best_cost = partial;
        best = w;
      }
      return;
    }
    if (!prob.active(x)) {
      w.row(x).setZero();
      w(x, prob.gamma().symbol) = 1.0;
      self(self, x + 1, partial);
      return;
    }
    for (size_t r = 0; r < grid_rows.size(); ++r) {
      const double next = partial + row_cost[x][r];
      if (next + tail_bound[x + 1] >= best_cost) continue;
      for (int k = 0; k < nk; ++k) w(x, k) = grid_rows[r][k];
      self(self, x + 1, next);
    }
  };
  search(search, 0, 0.0);
  best = prob.Finalize(best);
  return OracleResult{.min_cost = prob.Cost(best),
                      .channel = *Channel::Create(best)};
}

absl::StatusOr<double> MinCostN(const ErasureInstance& inst, double eps_total,
                                int n, const SolverConfig& cfg) {
  if (n < 1) {
    return MakeError(ErrorKind::kDomainError,
                     absl::StrCat("blocklength ", n, " must be positive"));
  }
  absl::StatusOr<SolverResult> r =
      SolveMinCost(inst, eps_total / static_cast<double>(n), cfg);
  if (!r.ok()) return r.status();
  return r->min_cost;
}

namespace {

bool IsIdentitySource(const JointSource& src) {
  if (src.x_size() != src.y_size()) return false;
  for (int x = 0; x < src.x_size(); ++x) {
    for (int y = 0; y < src.y_size(); ++y) {
      if (x != y && src(x, y) != 0.0) return false;
    }
  }
  return true;
}

}  // namespace

absl::StatusOr<MixtureResult> MixedSourceCost(const ErasureInstance& inst1,
                                              const ErasureInstance& inst2,
                                              double alpha, double eps,
                                              int grid,
                                              const SolverConfig& cfg) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    return MakeError(ErrorKind::kDomainError,
                     absl::StrCat("alpha = ", alpha, " outside [0, 1]"));
  }
  if (!(eps >= 0.0) || grid < 2) {
    return MakeError(ErrorKind::kDomainError,
                     "need eps >= 0 and at least two grid points");
  }
  if (inst1.cost().x_size() != inst2.cost().x_size() ||
      inst1.cost().xhat_size() != inst2.cost().xhat_size()) {
    return MakeError(ErrorKind::kDimensionMismatch,
                     "components must share the cost matrix shape");
  }
  if (!IsIdentitySource(inst1.source()) || !IsIdentitySource(inst2.source())) {
    return MakeError(ErrorKind::kDomainError,
                     "mixture components must have X = Y");
  }

  auto component = [&](const ErasureInstance& inst,
                       double e) -> absl::StatusOr<double> {
    absl::StatusOr<SolverResult> r = SolveMinCost(inst, e, cfg);
    if (!r.ok()) return r.status();
    return r->min_cost;
  };

  if (alpha == 0.0 || alpha == 1.0) {
    const ErasureInstance& only = alpha == 1.0 ? inst1 : inst2;
    absl::StatusOr<double> v = component(only, eps);
    if (!v.ok()) return v.status();
    return MixtureResult{.value = *v,
                         .eps1 = alpha == 1.0 ? eps : 0.0,
                         .eps2 = alpha == 1.0 ? 0.0 : eps,
                         .degenerate_alpha = true};
  }

  absl::Status failure = absl::OkStatus();
  auto objective = [&](double eps1) {
    const double eps2 = std::max(0.0, (eps - alpha * eps1) / (1.0 - alpha));
    absl::StatusOr<double> c1 = component(inst1, eps1);
    absl::StatusOr<double> c2 = component(inst2, eps2);
    if (!c1.ok() || !c2.ok()) {
      failure = c1.ok() ? c2.status() : c1.status();
      return std::numeric_limits<double>::infinity();
    }
    return alpha * *c1 + (1.0 - alpha) * *c2;
  };
  auto split = [&](double eps1) {
    return std::max(0.0, (eps - alpha * eps1) / (1.0 - alpha));
  };

  if (eps == 0.0) {
    const double v = objective(0.0);
    if (!failure.ok()) return failure;
    return MixtureResult{.value = v, .eps1 = 0.0, .eps2 = 0.0};
  }

  const double upper = eps / alpha;
  std::vector<double> values(grid);
  int best = 0;
  for (int i = 0; i < grid; ++i) {
    values[i] = objective(upper * i / (grid - 1));
    if (!failure.ok()) return failure;
    if (values[i] < values[best]) best = i;
  }

  // The objective is convex in eps1; refine around the best grid point.
  double a = upper * std::max(0, best - 1) / (grid - 1);
  double b = upper * std::min(grid - 1, best + 1) / (grid - 1);
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = objective(c), fd = objective(d);
  while (b - a > 1e-9 * std::max(1.0, upper)) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = objective(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = objective(d);
    }
  }
  if (!failure.ok()) return failure;

  double best_eps1 = upper * best / (grid - 1);
  double best_value = values[best];
  for (auto [e1, v] : {std::pair{c, fc}, std::pair{d, fd}}) {
    if (v < best_value) {
      best_value = v;
      best_eps1 = e1;
    }
  }
  return MixtureResult{.value = best_value,
                       .eps1 = best_eps1,
                       .eps2 = split(best_eps1)};
}

absl::StatusOr<ContinuityReport> ContinuityProbe(
    const ErasureInstance& inst, const std::vector<double>& eps_sequence,
    const SolverConfig& cfg, double final_gap_tol) {
  if (eps_sequence.empty()) {
    return MakeError(ErrorKind::kDomainError, "empty budget sequence");
  }
  for (size_t i = 0; i < eps_sequence.size(); ++i) {
    if (!(eps_sequence[i] >= 0.0) ||
        (i > 0 && !(eps_sequence[i] < eps_sequence[i - 1]))) {
      return MakeError(ErrorKind::kDomainError,
                       "budgets must be non-negative and strictly decreasing");
    }
  }
  absl::StatusOr<SolverResult> zero = SolveZeroLeakage(inst, cfg);
  if (!zero.ok()) return zero.status();

  ContinuityReport report;
  report.eps = eps_sequence;
  report.zero_cost = zero->min_cost;
  for (double e : eps_sequence) {
    absl::StatusOr<SolverResult> r = SolveMinCost(inst, e, cfg);
    if (!r.ok()) return r.status();
    report.costs.push_back(r->min_cost);
    report.gaps.push_back(std::abs(r->min_cost - zero->min_cost));
  }
  report.gaps_non_increasing = true;
  for (size_t i = 1; i < report.gaps.size(); ++i) {
    if (report.gaps[i] > report.gaps[i - 1] + 1e-9) {
      report.gaps_non_increasing = false;
    }
  }
  const size_t tail_start = report.gaps.size() / 2;
  for (size_t i = tail_start; i < report.gaps.size(); ++i) {
    report.max_tail_gap = std::max(report.max_tail_gap, report.gaps[i]);
  }
  report.final_gap = report.gaps.back();
  report.converged =
      report.gaps_non_increasing && report.final_gap < final_gap_tol;
  return report;
}

}  // namespace erasure
