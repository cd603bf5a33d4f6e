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

// Exact finite-alphabet probability primitives. Alphabets are the index sets
// {0, ..., k-1}; all information quantities are in nats.

#ifndef ERASURE_PROB_CORE_H_
#define ERASURE_PROB_CORE_H_

#include <span>
#include <vector>

#include "Eigen/Dense"
#include "absl/status/statusor.h"

namespace erasure {

using Matrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Entries in [-kClampTolerance, 0) are treated as rounding noise and clamped.
inline constexpr double kClampTolerance = 1e-12;
// A mass whose total is this close to one is left untouched by construction.
inline constexpr double kNormalizationSlack = 1e-14;

// A probability vector over {0, ..., size()-1}.
class Distribution {
 public:
  // Clamps tiny negatives, then normalizes to unit mass.
  static absl::StatusOr<Distribution> Create(std::vector<double> raw);
  static Distribution Uniform(int size);

  int size() const { return static_cast<int>(probs_.size()); }
  double operator[](int i) const { return probs_[i]; }
  std::span<const double> probs() const { return probs_; }

 private:
  friend class JointSource;
  explicit Distribution(std::vector<double> probs) : probs_(std::move(probs)) {}

  std::vector<double> probs_;
};

// Joint distribution P_XY on X x Y, stored row-major as p(x, y).
class JointSource {
 public:
  static absl::StatusOr<JointSource> Create(Matrix p_xy);
  // Builds P_XY(x, y) = P_X(x) P_{Y|X}(y|x). Rows of p_y_given_x are
  // normalized like Channel rows.
  static absl::StatusOr<JointSource> FromConditional(
      const Distribution& p_x, const Matrix& p_y_given_x);
  // X = Y: the diagonal joint of p_x.
  static JointSource Diagonal(const Distribution& p_x);

  int x_size() const { return static_cast<int>(p_.rows()); }
  int y_size() const { return static_cast<int>(p_.cols()); }
  double operator()(int x, int y) const { return p_(x, y); }
  const Matrix& matrix() const { return p_; }
  const Distribution& marginal_x() const { return marginal_x_; }
  const Distribution& marginal_y() const { return marginal_y_; }

  // P_{Y|X}(.|x); requires marginal_x()[x] > 0.
  std::vector<double> ConditionalRow(int x) const;

 private:
  JointSource(Matrix p, Distribution mx, Distribution my)
      : p_(std::move(p)), marginal_x_(std::move(mx)),
        marginal_y_(std::move(my)) {}

  Matrix p_;
  Distribution marginal_x_;
  Distribution marginal_y_;
};

// Stochastic matrix W(xhat | x); every row is a distribution.
class Channel {
 public:
  static absl::StatusOr<Channel> Create(Matrix w);
  static Channel Identity(int size);
  // Every row is the point mass on `symbol`.
  static Channel Constant(int in_size, int out_size, int symbol);
  // Every row equals `row`.
  static Channel ConstantRows(int in_size, const Distribution& row);
  // t * a + (1 - t) * b.
  static absl::StatusOr<Channel> Mix(const Channel& a, const Channel& b,
                                     double t);

  int in_size() const { return static_cast<int>(w_.rows()); }
  int out_size() const { return static_cast<int>(w_.cols()); }
  double operator()(int x, int xhat) const { return w_(x, xhat); }
  const Matrix& matrix() const { return w_; }

 private:
  explicit Channel(Matrix w) : w_(std::move(w)) {}

  Matrix w_;
};

// P_Xhat(xhat) = sum_x P_X(x) W(xhat|x).
absl::StatusOr<Distribution> PushForward(const Distribution& p_x,
                                         const Channel& w);

// Joint of (Y, Xhat) when Xhat is produced from X through `w`, i.e. the
// Markov chain Y - X - Xhat. Rows of the result are indexed by y.
absl::StatusOr<JointSource> InducedJointYXhat(const JointSource& src,
                                              const Channel& w);

// Joint of (X, Xhat) for Xhat produced from X through `w`.
absl::StatusOr<JointSource> JointXXhat(const Distribution& p_x,
                                       const Channel& w);

double Entropy(const Distribution& p);
double MutualInformation(const JointSource& joint);

// Same as MutualInformation on a raw non-negative matrix of unit mass.
// Skips zero cells; used on hot paths that avoid re-validation.
double MutualInformationOf(const Matrix& joint);

// h(p) = -p log p - (1-p) log(1-p), for p in [0, 1].
absl::StatusOr<double> BinaryEntropy(double p);
// The unique q in [0, 1/2] with h(q) = v, for v in [0, log 2].
absl::StatusOr<double> BinaryEntropyInverse(double v);

}  // namespace erasure

#endif  // ERASURE_PROB_CORE_H_
