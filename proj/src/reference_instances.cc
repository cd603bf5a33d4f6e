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

#include "erasure/reference_instances.h"

#include "erasure/cost.h"

namespace erasure {

absl::StatusOr<ErasureInstance> BinaryIdentityInstance(double p) {
  absl::StatusOr<Distribution> px = Distribution::Create({1.0 - p, p});
  if (!px.ok()) return px.status();
  return ErasureInstance::Create(JointSource::Diagonal(*px), HammingCost(2));
}

ErasureInstance WeaklyIndependentTernaryInstance() {
  Matrix cond(3, 2);
  cond << 1, 0,
          0, 1,
          0, 1;
  JointSource src =
      *JointSource::FromConditional(Distribution::Uniform(3), cond);
  return *ErasureInstance::Create(std::move(src), HammingCost(3));
}

Channel SixthsChannel() {
  Matrix w(3, 3);
  w << 1.0 / 3, 1.0 / 3, 1.0 / 3,
       1.0 / 6, 2.0 / 3, 1.0 / 6,
       1.0 / 2, 0.0,     1.0 / 2;
  return *Channel::Create(std::move(w));
}

}  // namespace erasure
