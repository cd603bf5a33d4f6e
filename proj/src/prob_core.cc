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

#include "erasure/prob_core.h"

#include <cmath>
#include <numbers>
#include <utility>

#include "absl/strings/str_cat.h"
#include "erasure/errors.h"

namespace erasure {
namespace {

// Clamps tiny negatives and rescales `values` to unit mass in place.
absl::Status NormalizeMass(std::span<double> values) {
  double total = 0.0;
  for (double& v : values) {
    if (!std::isfinite(v)) {
      return MakeError(ErrorKind::kNegativeEntry,
                       absl::StrCat("non-finite entry ", v));
    }
    if (v < -kClampTolerance) {
      return MakeError(ErrorKind::kNegativeEntry,
                       absl::StrCat("entry ", v, " is negative"));
    }
    if (v < 0.0) v = 0.0;
    total += v;
  }
  if (!(total > 0.0)) {
    return MakeError(ErrorKind::kNonPositiveMass,
                     absl::StrCat("total mass ", total, " is not positive"));
  }
  if (std::abs(total - 1.0) > kNormalizationSlack) {
    for (double& v : values) v /= total;
  }
  return absl::OkStatus();
}

std::span<double> RowSpan(Matrix& m, Eigen::Index row) {
  return {m.row(row).data(), static_cast<size_t>(m.cols())};
}

}  // namespace

absl::StatusOr<Distribution> Distribution::Create(std::vector<double> raw) {
  if (raw.empty()) {
    return MakeError(ErrorKind::kNonPositiveMass, "empty distribution");
  }
  if (absl::Status s = NormalizeMass(raw); !s.ok()) return s;
  return Distribution(std::move(raw));
}

Distribution Distribution::Uniform(int size) {
  return Distribution(std::vector<double>(size, 1.0 / size));
}

absl::StatusOr<JointSource> JointSource::Create(Matrix p_xy) {
  if (p_xy.size() == 0) {
    return MakeError(ErrorKind::kNonPositiveMass, "empty joint");
  }
  if (absl::Status s = NormalizeMass({p_xy.data(), size_t(p_xy.size())});
      !s.ok()) {
    return s;
  }
  std::vector<double> mx(p_xy.rows()), my(p_xy.cols());
  for (Eigen::Index x = 0; x < p_xy.rows(); ++x) {
    for (Eigen::Index y = 0; y < p_xy.cols(); ++y) {
      mx[x] += p_xy(x, y);
      my[y] += p_xy(x, y);
    }
  }
  // Marginals are sums of a unit-mass matrix and stay within rounding of 1.
  return JointSource(std::move(p_xy), Distribution(std::move(mx)),
                     Distribution(std::move(my)));
}

absl::StatusOr<JointSource> JointSource::FromConditional(
    const Distribution& p_x, const Matrix& p_y_given_x) {
  if (p_y_given_x.rows() != p_x.size()) {
    return MakeError(ErrorKind::kDimensionMismatch,
                     absl::StrCat("P_X has ", p_x.size(),
                                  " symbols but P_{Y|X} has ",
                                  p_y_given_x.rows(), " rows"));
  }
  absl::StatusOr<Channel> cond = Channel::Create(p_y_given_x);
  if (!cond.ok()) return cond.status();
  Matrix joint = cond->matrix();
  for (int x = 0; x < p_x.size(); ++x) joint.row(x) *= p_x[x];
  return Create(std::move(joint));
}

JointSource JointSource::Diagonal(const Distribution& p_x) {
  Matrix joint = Matrix::Zero(p_x.size(), p_x.size());
  for (int x = 0; x < p_x.size(); ++x) joint(x, x) = p_x[x];
  return JointSource(std::move(joint), p_x, p_x);
}

std::vector<double> JointSource::ConditionalRow(int x) const {
  std::vector<double> row(y_size());
  const double mass = marginal_x_[x];
  for (int y = 0; y < y_size(); ++y) row[y] = p_(x, y) / mass;
  return row;
}

absl::StatusOr<Channel> Channel::Create(Matrix w) {
  if (w.size() == 0) {
    return MakeError(ErrorKind::kNonPositiveMass, "empty channel");
  }
  for (Eigen::Index x = 0; x < w.rows(); ++x) {
    if (absl::Status s = NormalizeMass(RowSpan(w, x)); !s.ok()) {
      return absl::Status(s.code(),
                          absl::StrCat(s.message(), " (channel row ", x, ")"));
    }
  }
  return Channel(std::move(w));
}

Channel Channel::Identity(int size) {
  return Channel(Matrix::Identity(size, size));
}

Channel Channel::Constant(int in_size, int out_size, int symbol) {
  Matrix w = Matrix::Zero(in_size, out_size);
  w.col(symbol).setOnes();
  return Channel(std::move(w));
}

Channel Channel::ConstantRows(int in_size, const Distribution& row) {
  Matrix w(in_size, row.size());
  for (int x = 0; x < in_size; ++x) {
    for (int j = 0; j < row.size(); ++j) w(x, j) = row[j];
  }
  return Channel(std::move(w));
}

absl::StatusOr<Channel> Channel::Mix(const Channel& a, const Channel& b,
                                     double t) {
  if (a.in_size() != b.in_size() || a.out_size() != b.out_size()) {
    return MakeError(ErrorKind::kDimensionMismatch,
                     "mixed channels differ in shape");
  }
  if (!(t >= 0.0 && t <= 1.0)) {
    return MakeError(ErrorKind::kDomainError,
                     absl::StrCat("mixing weight ", t, " outside [0, 1]"));
  }
  return Create(t * a.w_ + (1.0 - t) * b.w_);
}

absl::StatusOr<Distribution> PushForward(const Distribution& p_x,
                                         const Channel& w) {
  if (p_x.size() != w.in_size()) {
    return MakeError(ErrorKind::kDimensionMismatch,
                     absl::StrCat("P_X has ", p_x.size(),
                                  " symbols, channel input has ", w.in_size()));
  }
  std::vector<double> out(w.out_size(), 0.0);
  for (int x = 0; x < p_x.size(); ++x) {
    for (int j = 0; j < w.out_size(); ++j) out[j] += p_x[x] * w(x, j);
  }
  return Distribution::Create(std::move(out));
}

absl::StatusOr<JointSource> InducedJointYXhat(const JointSource& src,
                                              const Channel& w) {
  if (src.x_size() != w.in_size()) {
    return MakeError(ErrorKind::kDimensionMismatch,
                     absl::StrCat("source has ", src.x_size(),
                                  " x-symbols, channel input has ",
                                  w.in_size()));
  }
  Matrix joint = src.matrix().transpose() * w.matrix();
  return JointSource::Create(std::move(joint));
}

absl::StatusOr<JointSource> JointXXhat(const Distribution& p_x,
                                       const Channel& w) {
  if (p_x.size() != w.in_size()) {
    return MakeError(ErrorKind::kDimensionMismatch,
                     absl::StrCat("P_X has ", p_x.size(),
                                  " symbols, channel input has ", w.in_size()));
  }
  Matrix joint = w.matrix();
  for (int x = 0; x < p_x.size(); ++x) joint.row(x) *= p_x[x];
  return JointSource::Create(std::move(joint));
}

double Entropy(const Distribution& p) {
  double h = 0.0;
  for (double v : p.probs()) {
    if (v > 0.0) h -= v * std::log(v);
  }
  return h;
}

double MutualInformationOf(const Matrix& joint) {
  Eigen::VectorXd rows = joint.rowwise().sum();
  Eigen::RowVectorXd cols = joint.colwise().sum();
  double info = 0.0;
  for (Eigen::Index a = 0; a < joint.rows(); ++a) {
    for (Eigen::Index b = 0; b < joint.cols(); ++b) {
      const double p = joint(a, b);
      if (p > 0.0) info += p * std::log(p / (rows[a] * cols[b]));
    }
  }
  // Rounding can leave -1e-17 on independent joints.
  return info > 0.0 ? info : 0.0;
}

double MutualInformation(const JointSource& joint) {
  return MutualInformationOf(joint.matrix());
}

absl::StatusOr<double> BinaryEntropy(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    return MakeError(ErrorKind::kDomainError,
                     absl::StrCat("h(p) needs p in [0, 1], got ", p));
  }
  double h = 0.0;
  if (p > 0.0) h -= p * std::log(p);
  if (p < 1.0) h -= (1.0 - p) * std::log1p(-p);
  return h;
}

absl::StatusOr<double> BinaryEntropyInverse(double v) {
  constexpr double kLog2 = std::numbers::ln2;
  if (!(v >= 0.0 && v <= kLog2 + 1e-15)) {
    return MakeError(ErrorKind::kDomainError,
                     absl::StrCat("h^-1(v) needs v in [0, log 2], got ", v));
  }
  if (v == 0.0) return 0.0;
  if (v >= kLog2) return 0.5;
  double lo = 0.0, hi = 0.5;
  while (hi - lo > 1e-16) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (*BinaryEntropy(mid) < v) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace erasure
