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

#include "erasure/erasure_sim.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <span>
#include <thread>

#include "absl/strings/str_cat.h"
#include "erasure/cost.h"
#include "erasure/errors.h"

namespace erasure {
namespace {

constexpr double kMaxLetters = 1e9;
constexpr int64_t kMaxBlockCells = int64_t{1} << 22;
// Stream tag for drawing finite-randomness maps.
constexpr uint32_t kMapStream = 0x6d617073;

// Per-stream engine; the stream index is folded into the seed sequence, so
// every trial owns an independent, order-free generator.
std::mt19937_64 StreamEngine(uint64_t seed, uint64_t stream, uint32_t tag) {
  std::seed_seq seq{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32),
                    static_cast<uint32_t>(stream),
                    static_cast<uint32_t>(stream >> 32), tag};
  return std::mt19937_64(seq);
}

double Uniform01(std::mt19937_64& engine) {
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

// First index whose cumulative mass exceeds u; skips zero-mass tails.
int SampleIndex(std::span<const double> cumulative, double u) {
  auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
  int idx = static_cast<int>(it - cumulative.begin());
  const int last = static_cast<int>(cumulative.size()) - 1;
  if (idx > last) {
    idx = last;
    while (idx > 0 && cumulative[idx] == cumulative[idx - 1]) --idx;
  }
  return idx;
}

std::vector<double> Cumulative(std::span<const double> probs) {
  std::vector<double> cum(probs.size());
  double total = 0.0;
  for (size_t i = 0; i < probs.size(); ++i) {
    total += probs[i];
    cum[i] = total;
  }
  return cum;
}

std::vector<std::vector<double>> RowCumulatives(const Matrix& m) {
  std::vector<std::vector<double>> out(m.rows());
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    out[r] = Cumulative({m.row(r).data(), static_cast<size_t>(m.cols())});
  }
  return out;
}

// Pairwise summation keeps means reproducible independently of scheduling.
double PairwiseSum(std::span<const double> v) {
  if (v.size() <= 8) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const size_t half = v.size() / 2;
  return PairwiseSum(v.first(half)) + PairwiseSum(v.subspan(half));
}

double Quantile(const std::vector<double>& sorted, double level) {
  const double rank = std::ceil(level * static_cast<double>(sorted.size()));
  const size_t idx = static_cast<size_t>(std::clamp(
      rank - 1.0, 0.0, static_cast<double>(sorted.size() - 1)));
  return sorted[idx];
}

Matrix Kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Matrix KronPower(const Matrix& m, int n) {
  Matrix out = m;
  for (int i = 1; i < n; ++i) out = Kron(out, m);
  return out;
}

double PluginMutualInformation(const std::vector<int64_t>& counts, int rows,
                               int cols, bool miller_madow) {
  int64_t total = 0;
  for (int64_t c : counts) total += c;
  if (total == 0) return 0.0;
  Matrix joint(rows, cols);
  int nonzero_joint = 0;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const int64_t v = counts[r * cols + c];
      joint(r, c) = static_cast<double>(v) / static_cast<double>(total);
      if (v > 0) ++nonzero_joint;
    }
  }
  double info = MutualInformationOf(joint);
  if (miller_madow) {
    const int nonzero_rows = static_cast<int>(
        (joint.rowwise().sum().array() > 0.0).count());
    const int nonzero_cols = static_cast<int>(
        (joint.colwise().sum().array() > 0.0).count());
    info += static_cast<double>((nonzero_rows - 1) + (nonzero_cols - 1) -
                                (nonzero_joint - 1)) /
            (2.0 * static_cast<double>(total));
  }
  return info;
}

struct TrialOutput {
  std::vector<double> costs;
  std::vector<double> spectrum;
};

class TrialRunner {
 public:
  TrialRunner(const ErasureInstance& inst, const Encoder& enc, int n,
              uint64_t seed)
      : inst_(inst), enc_(enc), n_(n), seed_(seed) {
    const Matrix& pxy = inst.source().matrix();
    joint_cum_ = Cumulative({pxy.data(), static_cast<size_t>(pxy.size())});
    if (const auto* prod = std::get_if<ProductEncoder>(&enc)) {
      row_cum_ = RowCumulatives(prod->channel.matrix());
    }
  }

  // Runs trials [begin, end) writing into out and accumulating (y, xhat)
  // letter counts.
  void Run(int begin, int end, TrialOutput& out,
           std::vector<int64_t>& counts) const {
    const int ny = inst_.y_size();
    const int nk = inst_.xhat_size();
    const CostMatrix& c = inst_.cost();
    std::vector<int> xs(n_), ys(n_);
    for (int t = begin; t < end; ++t) {
      std::mt19937_64 engine = StreamEngine(seed_, static_cast<uint64_t>(t), 0);
      for (int i = 0; i < n_; ++i) {
        const int cell = SampleIndex(joint_cum_, Uniform01(engine));
        xs[i] = cell / ny;
        ys[i] = cell % ny;
      }
      double cost_sum = 0.0;
      double log_sum = 0.0;
      std::visit(
          [&](const auto& e) {
            using T = std::decay_t<decltype(e)>;
            if constexpr (std::is_same_v<T, RepeatedSymbolEncoder>) {
              for (int i = 0; i < n_; ++i) {
                cost_sum += c(xs[i], e.symbol);
                ++counts[ys[i] * nk + e.symbol];
              }
            } else if constexpr (std::is_same_v<T, ProductEncoder>) {
              for (int i = 0; i < n_; ++i) {
                const int k = SampleIndex(row_cum_[xs[i]], Uniform01(engine));
                cost_sum += c(xs[i], k);
                log_sum -= std::log(e.channel(xs[i], k));
                ++counts[ys[i] * nk + k];
              }
            } else {
              const int u = static_cast<int>(
                  Uniform01(engine) * static_cast<double>(e.m_n()));
              const std::vector<int>& map = e.maps[u];
              std::vector<bool> seen(inst_.x_size(), false);
              for (int i = 0; i < n_; ++i) {
                const int k = map[xs[i]];
                cost_sum += c(xs[i], k);
                ++counts[ys[i] * nk + k];
                seen[xs[i]] = true;
              }
              // P(xhat^n | x^n) = (# maps agreeing on the symbols seen) / m_n.
              int agree = 0;
              for (const std::vector<int>& other : e.maps) {
                bool same = true;
                for (int x = 0; x < inst_.x_size() && same; ++x) {
                  if (seen[x] && other[x] != map[x]) same = false;
                }
                if (same) ++agree;
              }
              log_sum = std::log(static_cast<double>(e.m_n()) / agree);
            }
          },
          enc_);
      out.costs[t] = cost_sum / static_cast<double>(n_);
      out.spectrum[t] = log_sum / static_cast<double>(n_);
    }
  }

 private:
  const ErasureInstance& inst_;
  const Encoder& enc_;
  int n_;
  uint64_t seed_;
  std::vector<double> joint_cum_;
  std::vector<std::vector<double>> row_cum_;
};

Histogram BuildHistogram(const std::vector<double>& sorted, int bins) {
  Histogram h;
  h.lo = sorted.front();
  const double span = sorted.back() - sorted.front();
  if (span <= 0.0 || bins <= 1) {
    h.bin_width = 0.0;
    h.mass = {1.0};
    return h;
  }
  h.bin_width = span / bins;
  std::vector<int64_t> counts(bins, 0);
  for (double v : sorted) {
    int b = static_cast<int>((v - h.lo) / h.bin_width);
    ++counts[std::clamp(b, 0, bins - 1)];
  }
  h.mass.resize(bins);
  for (int b = 0; b < bins; ++b) {
    h.mass[b] = static_cast<double>(counts[b]) /
                static_cast<double>(sorted.size());
  }
  return h;
}

// Output independent of the input letter.
bool HasConstantRows(const Channel& w) {
  for (int x = 1; x < w.in_size(); ++x) {
    if (w.matrix().row(x) != w.matrix().row(0)) return false;
  }
  return true;
}

}  // namespace

absl::StatusOr<Encoder> BuildRepeatedEncoder(const ErasureInstance& inst) {
  absl::StatusOr<GammaMin> g = ComputeGammaMin(inst.p_x(), inst.cost());
  if (!g.ok()) return g.status();
  return Encoder(RepeatedSymbolEncoder{g->symbol});
}

Encoder BuildProductEncoder(const Channel& w) {
  return Encoder(ProductEncoder{w});
}

absl::StatusOr<Encoder> BuildFiniteRandomnessEncoder(const Channel& w,
                                                     int m_n, uint64_t seed) {
  if (m_n < 1) {
    return MakeError(ErrorKind::kDomainError,
                     absl::StrCat("m_n = ", m_n, " must be positive"));
  }
  std::mt19937_64 engine = StreamEngine(seed, 0, kMapStream);
  std::vector<std::vector<double>> rows = RowCumulatives(w.matrix());
  FiniteRandomnessEncoder enc{w, {}};
  enc.maps.reserve(m_n);
  for (int u = 0; u < m_n; ++u) {
    std::vector<int> map(w.in_size());
    for (int x = 0; x < w.in_size(); ++x) {
      map[x] = SampleIndex(rows[x], Uniform01(engine));
    }
    enc.maps.push_back(std::move(map));
  }
  return Encoder(std::move(enc));
}

absl::StatusOr<Channel> PerLetterChannel(const Encoder& enc, int x_size,
                                         int xhat_size) {
  return std::visit(
      [&](const auto& e) -> absl::StatusOr<Channel> {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, RepeatedSymbolEncoder>) {
          if (e.symbol < 0 || e.symbol >= xhat_size) {
            return MakeError(ErrorKind::kIndexOutOfRange, "repeated symbol");
          }
          return Channel::Constant(x_size, xhat_size, e.symbol);
        } else if constexpr (std::is_same_v<T, ProductEncoder>) {
          if (e.channel.in_size() != x_size ||
              e.channel.out_size() != xhat_size) {
            return MakeError(ErrorKind::kDimensionMismatch, "encoder channel");
          }
          return e.channel;
        } else {
          if (e.target.in_size() != x_size ||
              e.target.out_size() != xhat_size) {
            return MakeError(ErrorKind::kDimensionMismatch, "encoder channel");
          }
          Matrix w = Matrix::Zero(x_size, xhat_size);
          for (const std::vector<int>& map : e.maps) {
            for (int x = 0; x < x_size; ++x) w(x, map[x]) += 1.0;
          }
          w /= static_cast<double>(e.m_n());
          return Channel::Create(std::move(w));
        }
      },
      enc);
}

absl::StatusOr<double> ExactBlockLeakage(
    const JointSource& src,
    const std::vector<std::pair<double, Channel>>& mixture, int n) {
  if (n < 1 || mixture.empty()) {
    return MakeError(ErrorKind::kDomainError,
                     "need n >= 1 and a non-empty mixture");
  }
  const int nk = mixture.front().second.out_size();
  const double side_in = std::max(src.x_size(), src.y_size());
  const double side_out = std::max(src.x_size(), nk);
  const double cells = std::pow(side_in * side_out, n);
  if (cells > static_cast<double>(kMaxBlockCells)) {
    return MakeError(ErrorKind::kScaleGuard,
                     absl::StrCat("block tensor with ", cells, " cells"));
  }
  double total_weight = 0.0;
  for (const auto& [weight, w] : mixture) {
    if (w.in_size() != src.x_size() || w.out_size() != nk) {
      return MakeError(ErrorKind::kDimensionMismatch,
                       "mixture channels must match the source");
    }
    if (!(weight >= 0.0)) {
      return MakeError(ErrorKind::kNegativeEntry, "negative mixture weight");
    }
    total_weight += weight;
  }
  if (!(total_weight > 0.0)) {
    return MakeError(ErrorKind::kNonPositiveMass, "mixture weights sum to 0");
  }
  const Matrix block_source = KronPower(src.matrix(), n);
  Matrix block_channel =
      Matrix::Zero(block_source.rows(), std::lround(std::pow(nk, n)));
  for (const auto& [weight, w] : mixture) {
    block_channel += (weight / total_weight) * KronPower(w.matrix(), n);
  }
  return MutualInformationOf(block_source.transpose() * block_channel);
}

absl::StatusOr<double> ExactBlockLeakage(const JointSource& src,
                                         const Channel& w, int n) {
  return ExactBlockLeakage(
      src, std::vector<std::pair<double, Channel>>{{1.0, w}}, n);
}

absl::StatusOr<SimulationReport> Simulate(const ErasureInstance& inst,
                                          const Encoder& enc, int n,
                                          int trials, uint64_t seed,
                                          const SimulationOptions& opts) {
  if (n < 1 || trials < 1) {
    return MakeError(ErrorKind::kDomainError,
                     "blocklength and trial count must be positive");
  }
  if (static_cast<double>(n) * static_cast<double>(trials) > kMaxLetters) {
    return MakeError(ErrorKind::kScaleGuard,
                     absl::StrCat("n * trials = ",
                                  static_cast<double>(n) * trials,
                                  " exceeds 1e9"));
  }
  absl::StatusOr<Channel> letter =
      PerLetterChannel(enc, inst.x_size(), inst.xhat_size());
  if (!letter.ok()) return letter.status();

  const int ny = inst.y_size();
  const int nk = inst.xhat_size();
  TrialRunner runner(inst, enc, n, seed);
  TrialOutput out{std::vector<double>(trials), std::vector<double>(trials)};

  const int threads = std::clamp(opts.threads, 1, trials);
  std::vector<std::vector<int64_t>> counts(
      threads, std::vector<int64_t>(static_cast<size_t>(ny) * nk, 0));
  if (threads == 1) {
    runner.Run(0, trials, out, counts[0]);
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < threads; ++i) {
      const int begin = static_cast<int>(int64_t{trials} * i / threads);
      const int end = static_cast<int>(int64_t{trials} * (i + 1) / threads);
      pool.emplace_back([&, i, begin, end] {
        runner.Run(begin, end, out, counts[i]);
      });
    }
    for (std::thread& t : pool) t.join();
  }
  std::vector<int64_t> pooled(static_cast<size_t>(ny) * nk, 0);
  for (const auto& part : counts) {
    for (size_t i = 0; i < pooled.size(); ++i) pooled[i] += part[i];
  }

  SimulationReport report;
  report.n = n;
  report.trials = trials;
  report.seed = seed;
  report.avg_cost = PairwiseSum(out.costs) / trials;
  if (trials > 1) {
    std::vector<double> sq(trials);
    for (int t = 0; t < trials; ++t) {
      sq[t] = (out.costs[t] - report.avg_cost) * (out.costs[t] - report.avg_cost);
    }
    report.cost_std_error =
        std::sqrt(PairwiseSum(sq) / (trials - 1) / trials);
  }
  std::vector<double> sorted_costs = out.costs;
  std::sort(sorted_costs.begin(), sorted_costs.end());
  for (double level : opts.quantile_levels) {
    report.cost_quantiles[level] = Quantile(sorted_costs, level);
  }

  report.miller_madow_leakage_per_letter =
      PluginMutualInformation(pooled, ny, nk, /*miller_madow=*/true);
  if (std::holds_alternative<RepeatedSymbolEncoder>(enc)) {
    report.plugin_leakage_per_letter = 0.0;
    report.leakage_exact = true;
  } else if (const auto* prod = std::get_if<ProductEncoder>(&enc);
             prod != nullptr && HasConstantRows(prod->channel)) {
    report.plugin_leakage_per_letter = 0.0;
    report.leakage_exact = true;
  } else if (prod != nullptr && n <= 3) {
    absl::StatusOr<double> exact =
        ExactBlockLeakage(inst.source(), prod->channel, n);
    if (exact.ok()) {
      report.plugin_leakage_per_letter = *exact / n;
      report.leakage_exact = true;
    }
  }
  if (!report.leakage_exact) {
    report.plugin_leakage_per_letter =
        PluginMutualInformation(pooled, ny, nk, /*miller_madow=*/false);
  }

  std::vector<double> sorted_spectrum = out.spectrum;
  std::sort(sorted_spectrum.begin(), sorted_spectrum.end());
  report.spectrum_histogram =
      BuildHistogram(sorted_spectrum, opts.histogram_bins);
  report.spectrum_mean = PairwiseSum(out.spectrum) / trials;
  report.spectrum_quantile = Quantile(sorted_spectrum, 0.9);
  return report;
}

absl::StatusOr<double> WorstCaseProxy(const SimulationReport& report,
                                      double delta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    return MakeError(ErrorKind::kDomainError,
                     absl::StrCat("delta = ", delta, " outside (0, 1)"));
  }
  const double level = 1.0 - delta;
  for (const auto& [q, value] : report.cost_quantiles) {
    if (std::abs(q - level) <= 1e-12) return value;
  }
  return MakeError(ErrorKind::kMissingQuantile,
                   absl::StrCat("no ", level, "-quantile in the report"));
}

}  // namespace erasure
