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

#include "erasure/weak_independence.h"

#include "Eigen/SVD"
#include "absl/strings/str_cat.h"
#include "erasure/errors.h"

namespace erasure {

absl::StatusOr<WeakIndependenceReport> IsWeaklyIndependent(
    const JointSource& src, double tol) {
  if (!(tol > 0.0)) {
    return MakeError(ErrorKind::kConfigError,
                     absl::StrCat("rank tolerance ", tol, " must be positive"));
  }
  std::vector<int> rows;
  for (int x = 0; x < src.x_size(); ++x) {
    if (src.marginal_x()[x] > 0.0) rows.push_back(x);
  }
  if (rows.empty()) {
    return MakeError(ErrorKind::kAllMassless, "no x-symbol has mass");
  }

  Eigen::MatrixXd conditional(rows.size(), src.y_size());
  for (size_t i = 0; i < rows.size(); ++i) {
    std::vector<double> row = src.ConditionalRow(rows[i]);
    for (int y = 0; y < src.y_size(); ++y) conditional(i, y) = row[y];
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(conditional);
  const Eigen::VectorXd& sv = svd.singularValues();

  WeakIndependenceReport report;
  report.row_count = static_cast<int>(rows.size());
  report.tolerance = tol;
  report.excluded_massless_rows = report.row_count < src.x_size();
  report.singular_values.assign(sv.data(), sv.data() + sv.size());
  const double threshold = tol * (sv.size() > 0 ? sv[0] : 0.0);
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv[i] > threshold) ++report.row_rank;
  }
  report.weakly_independent = report.row_rank < report.row_count;
  return report;
}

absl::string_view RepeatedSymbolVerdictName(RepeatedSymbolVerdict verdict) {
  switch (verdict) {
    case RepeatedSymbolVerdict::kOptimal:
      return "Optimal";
    case RepeatedSymbolVerdict::kNotOptimalWeaklyIndependent:
      return "NotOptimalWeaklyIndependent";
    case RepeatedSymbolVerdict::kNotOptimalPositiveEps:
      return "NotOptimalPositiveEps";
  }
  return "Unknown";
}

absl::StatusOr<RepeatedSymbolVerdict> ClassifyRepeatedSymbol(
    const ErasureInstance& inst, double eps, double tol) {
  if (!(eps >= 0.0)) {
    return MakeError(ErrorKind::kDomainError,
                     absl::StrCat("eps = ", eps, " must be non-negative"));
  }
  if (eps > 0.0) return RepeatedSymbolVerdict::kNotOptimalPositiveEps;
  absl::StatusOr<WeakIndependenceReport> report =
      IsWeaklyIndependent(inst.source(), tol);
  if (!report.ok()) return report.status();
  return report->weakly_independent
             ? RepeatedSymbolVerdict::kNotOptimalWeaklyIndependent
             : RepeatedSymbolVerdict::kOptimal;
}

}  // namespace erasure
