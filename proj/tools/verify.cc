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

#include <cmath>
#include <cstdio>
#include <random>
#include <string>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "cli.h"
#include "erasure/cost.h"
#include "erasure/erasure_sim.h"
#include "erasure/reference_instances.h"
#include "erasure/solver.h"
#include "erasure/weak_independence.h"

namespace erasure::cli {
namespace {

constexpr uint64_t kVerifySeed = 20260415;

class Tally {
 public:
  explicit Tally(std::ostream& out) : out_(out) {}

  void Claim(const std::string& text, bool ok) {
    out_ << text << " : " << (ok ? "PASS" : "FAIL") << "\n";
    if (!ok) ++failures_;
  }

  int failures() const { return failures_; }

 private:
  std::ostream& out_;
  int failures_ = 0;
};

std::string Num(double v) { return absl::StrFormat("%.4g", v); }

void BinaryClosedFormClaims(Tally& tally) {
  std::mt19937_64 rng(kVerifySeed);
  std::uniform_real_distribution<double> p_dist(0.05, 0.5);
  std::uniform_real_distribution<double> eps_dist(0.0, std::log(2.0));
  const int blocks[] = {1, 2, 5, 10};
  double worst = 0.0;
  bool ok = true;
  for (int i = 0; i < 20; ++i) {
    const double p = p_dist(rng);
    const double eps = eps_dist(rng);
    const int n = blocks[i % 4];
    absl::StatusOr<ErasureInstance> inst = BinaryIdentityInstance(p);
    absl::StatusOr<double> closed = BinaryClosedForm(p, eps, n);
    if (!inst.ok() || !closed.ok()) {
      ok = false;
      continue;
    }
    absl::StatusOr<double> solved = MinCostN(*inst, eps, n);
    if (!solved.ok()) {
      ok = false;
      continue;
    }
    worst = std::max(worst, std::abs(*solved - *closed));
  }
  tally.Claim(absl::StrCat("binary closed form over 20 random (p, eps, n), "
                           "max error ",
                           Num(worst), " <= 1e-4"),
              ok && worst <= 1e-4);
}

void TernaryClaims(Tally& tally) {
  const ErasureInstance inst = WeaklyIndependentTernaryInstance();
  const Channel sixths = SixthsChannel();
  absl::StatusOr<GammaMin> gamma = ComputeGammaMin(inst.p_x(), inst.cost());
  absl::StatusOr<double> cost = ExpectedCost(inst.p_x(), sixths, inst.cost());
  absl::StatusOr<JointSource> joint = InducedJointYXhat(inst.source(), sixths);
  if (!gamma.ok() || !cost.ok() || !joint.ok()) {
    tally.Claim("weakly-independent ternary instance loads", false);
    return;
  }
  const double leak = MutualInformation(*joint);
  tally.Claim(absl::StrCat("weakly-independent ternary instance: sixths "
                           "channel cost = ",
                           Num(*cost), " with leakage ", Num(leak),
                           " < Gamma_min = ", Num(gamma->value)),
              std::abs(*cost - 0.5) <= 1e-12 && leak <= 1e-12 &&
                  std::abs(gamma->value - 2.0 / 3.0) <= 1e-12 &&
                  *cost < gamma->value);

  absl::StatusOr<SolverResult> lp = SolveZeroLeakage(inst);
  tally.Claim(absl::StrCat("weakly-independent ternary instance: zero-leakage "
                           "optimum = ",
                           lp.ok() ? Num(lp->min_cost) : "error",
                           " <= 0.5 and beats Gamma_min by >= 0.16"),
              lp.ok() && lp->min_cost <= 0.5 + 1e-6 &&
                  gamma->value - lp->min_cost >= 0.16 &&
                  lp->leakage <= 1e-9);

  absl::StatusOr<RepeatedSymbolVerdict> verdict =
      ClassifyRepeatedSymbol(inst, 0.0);
  tally.Claim(
      absl::StrCat("weakly-independent ternary instance at eps = 0: verdict ",
                   verdict.ok() ? RepeatedSymbolVerdictName(*verdict)
                                : "error"),
      verdict.ok() &&
          *verdict == RepeatedSymbolVerdict::kNotOptimalWeaklyIndependent);
}

void GammaMinClaims(Tally& tally) {
  for (double p : {0.3, 0.5}) {
    absl::StatusOr<ErasureInstance> inst = BinaryIdentityInstance(p);
    absl::StatusOr<GammaMin> gamma =
        inst.ok() ? ComputeGammaMin(inst->p_x(), inst->cost())
                  : absl::StatusOr<GammaMin>(inst.status());
    tally.Claim(absl::StrCat("binary p = ", Num(p), ": Gamma_min = ",
                             gamma.ok() ? Num(gamma->value) : "error"),
                gamma.ok() && std::abs(gamma->value - p) <= 1e-12);
  }
}

void VerdictClaims(Tally& tally) {
  absl::StatusOr<ErasureInstance> inst = BinaryIdentityInstance(0.3);
  if (!inst.ok()) {
    tally.Claim("binary instance loads", false);
    return;
  }
  absl::StatusOr<RepeatedSymbolVerdict> at_zero =
      ClassifyRepeatedSymbol(*inst, 0.0);
  tally.Claim("binary p = 0.3 at eps = 0: repeated symbol is Optimal",
              at_zero.ok() && *at_zero == RepeatedSymbolVerdict::kOptimal);
  absl::StatusOr<RepeatedSymbolVerdict> positive =
      ClassifyRepeatedSymbol(*inst, 0.1);
  tally.Claim("binary p = 0.3 at eps = 0.1: repeated symbol is "
              "NotOptimalPositiveEps",
              positive.ok() &&
                  *positive == RepeatedSymbolVerdict::kNotOptimalPositiveEps);

  // Binary X with Y strictly dependent on X: rows of P_{Y|X} are distinct.
  std::mt19937_64 rng(kVerifySeed + 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;
  bool ok = true;
  for (int i = 0; i < 10; ++i) {
    const double px = 0.05 + 0.9 * unit(rng);
    Matrix cond(2, 3);
    for (int x = 0; x < 2; ++x) {
      for (int y = 0; y < 3; ++y) cond(x, y) = 0.05 + unit(rng);
    }
    Matrix cost(2, 3);
    for (int x = 0; x < 2; ++x) {
      for (int k = 0; k < 3; ++k) cost(x, k) = unit(rng);
    }
    absl::StatusOr<Distribution> p_x = Distribution::Create({px, 1.0 - px});
    absl::StatusOr<JointSource> src =
        p_x.ok() ? JointSource::FromConditional(*p_x, cond)
                 : absl::StatusOr<JointSource>(p_x.status());
    absl::StatusOr<CostMatrix> c = CostMatrix::Create(cost);
    if (!src.ok() || !c.ok()) {
      ok = false;
      continue;
    }
    absl::StatusOr<ErasureInstance> rand_inst =
        ErasureInstance::Create(*src, *c);
    if (!rand_inst.ok()) {
      ok = false;
      continue;
    }
    absl::StatusOr<SolverResult> lp = SolveZeroLeakage(*rand_inst);
    absl::StatusOr<GammaMin> gamma = ComputeGammaMin(rand_inst->p_x(), *c);
    if (!lp.ok() || !gamma.ok()) {
      ok = false;
      continue;
    }
    worst = std::max(worst, std::abs(lp->min_cost - gamma->value));
  }
  tally.Claim(absl::StrCat("10 random binary-X dependent sources: "
                           "zero-leakage optimum = Gamma_min, max error ",
                           Num(worst)),
              ok && worst <= 1e-9);
}

void ContinuityClaims(Tally& tally) {
  std::vector<double> eps;
  for (int k = 1; k <= 12; ++k) eps.push_back(std::ldexp(1.0, -k));
  absl::StatusOr<ErasureInstance> binary = BinaryIdentityInstance(0.3);
  const ErasureInstance ternary = WeaklyIndependentTernaryInstance();
  const std::pair<const char*, const ErasureInstance*> cases[] = {
      {"binary p = 0.3", binary.ok() ? &*binary : nullptr},
      {"weakly-independent ternary instance", &ternary}};
  for (const auto& [name, inst] : cases) {
    absl::StatusOr<ContinuityReport> report =
        inst ? ContinuityProbe(*inst, eps)
             : absl::StatusOr<ContinuityReport>(binary.status());
    tally.Claim(
        absl::StrCat(name, ": C(2^-k) -> C(0) = ",
                     report.ok() ? Num(report->zero_cost) : "error",
                     ", final gap ",
                     report.ok() ? Num(report->final_gap) : "error", " < 1e-3"),
        report.ok() && report->converged && report->gaps_non_increasing);
  }
}

void BlocklengthClaims(Tally& tally) {
  const ErasureInstance inst = WeaklyIndependentTernaryInstance();
  std::vector<double> values;
  for (int n : {1, 4, 16}) {
    absl::StatusOr<double> v = MinCostN(inst, 0.0, n);
    if (v.ok()) values.push_back(*v);
  }
  tally.Claim("zero budget: C(n, 0) identical for n = 1, 4, 16",
              values.size() == 3 && std::abs(values[0] - values[1]) <= 1e-9 &&
                  std::abs(values[0] - values[2]) <= 1e-9);
}

void RepeatedEncoderClaims(Tally& tally) {
  const ErasureInstance inst = WeaklyIndependentTernaryInstance();
  absl::StatusOr<Encoder> enc = BuildRepeatedEncoder(inst);
  absl::StatusOr<SimulationReport> report =
      enc.ok() ? Simulate(inst, *enc, 64, 200, kVerifySeed)
               : absl::StatusOr<SimulationReport>(enc.status());
  tally.Claim(
      absl::StrCat("repeated-symbol encoder leakage = ",
                   report.ok() ? Num(report->plugin_leakage_per_letter)
                               : "error"),
      report.ok() && report->leakage_exact &&
          report->plugin_leakage_per_letter == 0.0);
}

}  // namespace

int VerifyClaims(std::ostream& out) {
  Tally tally(out);
  BinaryClosedFormClaims(tally);
  TernaryClaims(tally);
  GammaMinClaims(tally);
  VerdictClaims(tally);
  ContinuityClaims(tally);
  BlocklengthClaims(tally);
  RepeatedEncoderClaims(tally);
  out << (tally.failures() == 0 ? "all claims hold"
                                : absl::StrCat(tally.failures(),
                                               " claim(s) failed"))
      << "\n";
  return tally.failures();
}

}  // namespace erasure::cli
