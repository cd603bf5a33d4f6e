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

#ifndef ERASURE_ERRORS_H_
#define ERASURE_ERRORS_H_

#include <string>
#include "absl/strings/string_view.h"

#include "absl/status/status.h"

namespace erasure {

// Named failure kinds. The kind is carried as a "Kind: " prefix of the status
// message so that callers (the CLI in particular) can report it verbatim.
enum class ErrorKind {
  kNonPositiveMass,
  kNegativeEntry,
  kDimensionMismatch,
  kDomainError,
  kLengthMismatch,
  kIndexOutOfRange,
  kConfigError,
  kScaleGuard,
  kMissingQuantile,
  kAllMassless,
  kInvalidCost,
  kParseError,
  kInternal,
};

absl::string_view ErrorKindName(ErrorKind kind);

absl::Status MakeError(ErrorKind kind, absl::string_view message);

// Returns the kind prefix of a status produced by MakeError, or the canonical
// absl code name for any other status.
std::string ErrorKindOf(const absl::Status& status);

}  // namespace erasure

#endif  // ERASURE_ERRORS_H_
