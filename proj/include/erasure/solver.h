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

// Minimum expected overwrite cost under a mutual-information leakage bound.
//
// For a memoryless pair (X, Y), a per-letter cost c and a per-letter leakage
// budget eps', the solver computes
//
//   min E[c(X, Xhat)]  over channels W = P_{Xhat|X}
//   subject to I(Y; Xhat) <= eps',
//
// where Xhat is produced from X alone. The objective is linear in W and the
// constraint is convex, so the program is convex. The blocklength-n value
// with total budget eps is the single-letter value at eps' = eps / n.

#ifndef ERASURE_SOLVER_H_
#define ERASURE_SOLVER_H_

#include "absl/strings/string_view.h"
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "erasure/cost.h"
#include "erasure/prob_core.h"

namespace erasure {

// A joint source P_XY together with a cost matrix over X x Xhat.
class ErasureInstance {
 public:
  static absl::StatusOr<ErasureInstance> Create(JointSource source,
                                                CostMatrix cost);

  const JointSource& source() const { return source_; }
  const CostMatrix& cost() const { return cost_; }
  const Distribution& p_x() const { return source_.marginal_x(); }
  int x_size() const { return source_.x_size(); }
  int y_size() const { return source_.y_size(); }
  int xhat_size() const { return cost_.xhat_size(); }

 private:
  ErasureInstance(JointSource source, CostMatrix cost)
      : source_(std::move(source)), cost_(std::move(cost)) {}

  JointSource source_;
  CostMatrix cost_;
};

enum class SolverStatus { kConverged, kIterationCap, kInfeasible };

absl::string_view SolverStatusName(SolverStatus status);

// Method used for the penalized subproblem min_W E[c] + lambda I(Y; Xhat).
enum class InnerMethod {
  // Entropic mirror descent with backtracking; reduces to Blahut-Arimoto when
  // X = Y.
  kMirrorDescent,
  // Conditional gradient with exact line search, started from the Gamma_min
  // constant channel.
  kFrankWolfe,
};

struct SolverConfig {
  // Frank-Wolfe gap at which a penalized subproblem counts as solved, and
  // the certified duality gap at which the multiplier search stops.
  double optimality_tol = 1e-7;
  // Iteration budget per penalized subproblem.
  int max_iters = 20000;
  // Pivot and feasibility tolerance of the zero-leakage linear program.
  double lp_tol = 1e-9;
  int max_bisections = 200;
  InnerMethod inner_method = InnerMethod::kMirrorDescent;
};

struct SolverResult {
  double min_cost = 0.0;
  Channel channel;
  // I(Y; Xhat) at `channel`, nats.
  double leakage = 0.0;
  SolverStatus status = SolverStatus::kConverged;
  // Upper bound on min_cost minus the optimum.
  double duality_gap = 0.0;
  int iterations = 0;
  // Multiplier of the leakage constraint at the returned point (0 when the
  // constraint is inactive or the zero-leakage program was solved).
  double lambda = 0.0;
};

// Single-letter minimum cost at per-letter budget eps_per_letter >= 0.
absl::StatusOr<SolverResult> SolveMinCost(const ErasureInstance& inst,
                                          double eps_per_letter,
                                          const SolverConfig& cfg = {});

// Exact minimum over the leakage-free polytope
//   { W : sum_x P_XY(x,y) W(xhat|x) = P_Y(y) sum_x P_X(x) W(xhat|x) },
// solved as a linear program.
absl::StatusOr<SolverResult> SolveZeroLeakage(const ErasureInstance& inst,
                                              const SolverConfig& cfg = {});

struct PenalizedSolution {
  Channel channel;
  double cost = 0.0;
  double leakage = 0.0;
  // cost + lambda * leakage at `channel`.
  double value = 0.0;
  // Frank-Wolfe gap; value - gap lower-bounds the penalized optimum.
  double gap = 0.0;
  int iterations = 0;
  bool converged = false;
};

// min_W E[c] + lambda I(Y; Xhat) for lambda > 0. `start`, when given, must
// have the instance's shape.
absl::StatusOr<PenalizedSolution> SolvePenalized(
    const ErasureInstance& inst, double lambda, const SolverConfig& cfg = {},
    const Channel* start = nullptr);

// h^{-1}(|h(p) - eps/n|^+) for the binary X = Y source with Hamming cost and
// minority probability p in [0, 1/2].
absl::StatusOr<double> BinaryClosedForm(double p, double eps, int n);

struct OracleResult {
  double min_cost = 0.0;
  Channel channel;
};

// Exhaustive search over channels whose rows lie on the simplex grid with
// denominator grid_steps. Limited to x_size * xhat_size <= 9 and
// grid_steps <= 48.
absl::StatusOr<OracleResult> BruteForceOracle(const ErasureInstance& inst,
                                              double eps_per_letter,
                                              int grid_steps);

// C*(n, eps) = single-letter minimum at eps / n.
absl::StatusOr<double> MinCostN(const ErasureInstance& inst, double eps_total,
                                int n, const SolverConfig& cfg = {});

struct MixtureResult {
  double value = 0.0;
  double eps1 = 0.0;
  double eps2 = 0.0;
  // alpha was 0 or 1 and the single component's value was returned.
  bool degenerate_alpha = false;
};

// inf over alpha eps1 + (1 - alpha) eps2 <= eps of
//   alpha C1(eps1) + (1 - alpha) C2(eps2)
// for two X = Y components sharing a cost shape. `grid` is the number of
// coarse points tried before golden-section refinement.
absl::StatusOr<MixtureResult> MixedSourceCost(const ErasureInstance& inst1,
                                              const ErasureInstance& inst2,
                                              double alpha, double eps,
                                              int grid,
                                              const SolverConfig& cfg = {});

struct ContinuityReport {
  std::vector<double> eps;
  std::vector<double> costs;
  double zero_cost = 0.0;
  // |C(eps_k) - C(0)|.
  std::vector<double> gaps;
  // Largest gap over the second half of the sequence.
  double max_tail_gap = 0.0;
  double final_gap = 0.0;
  bool gaps_non_increasing = false;
  bool converged = false;
};

// Evaluates the solver along a strictly decreasing budget sequence and checks
// C(eps_k) -> C(0). `final_gap_tol` decides `converged`.
absl::StatusOr<ContinuityReport> ContinuityProbe(
    const ErasureInstance& inst, const std::vector<double>& eps_sequence,
    const SolverConfig& cfg = {}, double final_gap_tol = 1e-3);

}  // namespace erasure

#endif  // ERASURE_SOLVER_H_
