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

// Erasure encoders and Monte Carlo experiments on memoryless sources.

#ifndef ERASURE_ERASURE_SIM_H_
#define ERASURE_ERASURE_SIM_H_

#include <cstdint>
#include <map>
#include <utility>
#include <variant>
#include <vector>

#include "absl/status/statusor.h"
#include "erasure/prob_core.h"
#include "erasure/solver.h"

namespace erasure {

// Writes the same symbol at every position.
struct RepeatedSymbolEncoder {
  int symbol = 0;
};

// Applies `channel` independently to every letter.
struct ProductEncoder {
  Channel channel;
};

// Holds m_n deterministic letter maps x -> xhat drawn from `target`; each
// block picks one map uniformly and applies it to every letter.
struct FiniteRandomnessEncoder {
  Channel target;
  std::vector<std::vector<int>> maps;

  int m_n() const { return static_cast<int>(maps.size()); }
};

using Encoder =
    std::variant<RepeatedSymbolEncoder, ProductEncoder, FiniteRandomnessEncoder>;

// Repeats the Gamma_min symbol (smallest index on ties).
absl::StatusOr<Encoder> BuildRepeatedEncoder(const ErasureInstance& inst);

Encoder BuildProductEncoder(const Channel& w);

// Draws each map by inverse-transform sampling of every row of `w` under
// uniforms derived from `seed`.
absl::StatusOr<Encoder> BuildFiniteRandomnessEncoder(const Channel& w,
                                                     int m_n, uint64_t seed);

// The per-letter channel an encoder induces: constant for repeated symbols,
// the channel itself for product encoders, and the empirical average of the
// maps for finite randomness.
absl::StatusOr<Channel> PerLetterChannel(const Encoder& enc, int x_size,
                                         int xhat_size);

// Exact I(Y^n; Xhat^n) when Xhat^n is drawn from the mixture
// sum_k weight_k W_k^{(x) n} of product channels, by tensor expansion.
// Guarded to (max(|X|,|Y|) * max(|X|,|Xhat|))^n <= 2^22 cells.
absl::StatusOr<double> ExactBlockLeakage(
    const JointSource& src,
    const std::vector<std::pair<double, Channel>>& mixture, int n);

// Single product channel.
absl::StatusOr<double> ExactBlockLeakage(const JointSource& src,
                                         const Channel& w, int n);

struct Histogram {
  double lo = 0.0;
  double bin_width = 0.0;
  std::vector<double> mass;
};

struct SimulationOptions {
  // Worker threads; results do not depend on this value.
  int threads = 1;
  std::vector<double> quantile_levels = {0.5, 0.9, 0.99};
  int histogram_bins = 32;
};

struct SimulationReport {
  int n = 0;
  int trials = 0;
  uint64_t seed = 0;
  double avg_cost = 0.0;
  // Sample standard deviation of the block cost over sqrt(trials).
  double cost_std_error = 0.0;
  // Level delta -> empirical delta-quantile of c_n.
  std::map<double, double> cost_quantiles;
  // Per-letter I(Y; Xhat): exact for repeated-symbol encoders and for
  // product encoders with n <= 3, otherwise the pooled plug-in estimate.
  double plugin_leakage_per_letter = 0.0;
  bool leakage_exact = false;
  // Pooled plug-in estimate with the Miller-Madow bias correction.
  double miller_madow_leakage_per_letter = 0.0;
  // Empirical distribution of (1/n) log 1/P(Xhat^n | X^n).
  Histogram spectrum_histogram;
  double spectrum_mean = 0.0;
  // 0.9-quantile of the spectrum; stands in for the limit superior in
  // probability at this blocklength.
  double spectrum_quantile = 0.0;
};

absl::StatusOr<SimulationReport> Simulate(const ErasureInstance& inst,
                                          const Encoder& enc, int n,
                                          int trials, uint64_t seed,
                                          const SimulationOptions& opts = {});

// (1 - delta)-quantile of the block cost; requires that level in the report.
absl::StatusOr<double> WorstCaseProxy(const SimulationReport& report,
                                      double delta);

}  // namespace erasure

#endif  // ERASURE_ERASURE_SIM_H_
