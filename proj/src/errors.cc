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

#include "erasure/errors.h"

#include <string>

#include "absl/strings/str_cat.h"

namespace erasure {

absl::string_view ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kNonPositiveMass:
      return "NonPositiveMass";
    case ErrorKind::kNegativeEntry:
      return "NegativeEntry";
    case ErrorKind::kDimensionMismatch:
      return "DimensionMismatch";
    case ErrorKind::kDomainError:
      return "DomainError";
    case ErrorKind::kLengthMismatch:
      return "LengthMismatch";
    case ErrorKind::kIndexOutOfRange:
      return "IndexOutOfRange";
    case ErrorKind::kConfigError:
      return "ConfigError";
    case ErrorKind::kScaleGuard:
      return "ScaleGuard";
    case ErrorKind::kMissingQuantile:
      return "MissingQuantile";
    case ErrorKind::kAllMassless:
      return "AllMassless";
    case ErrorKind::kInvalidCost:
      return "InvalidCost";
    case ErrorKind::kParseError:
      return "ParseError";
    case ErrorKind::kInternal:
      return "Internal";
  }
  return "Unknown";
}

absl::Status MakeError(ErrorKind kind, absl::string_view message) {
  std::string text = absl::StrCat(ErrorKindName(kind), ": ", message);
  switch (kind) {
    case ErrorKind::kScaleGuard:
      return absl::ResourceExhaustedError(text);
    case ErrorKind::kMissingQuantile:
      return absl::NotFoundError(text);
    case ErrorKind::kAllMassless:
    case ErrorKind::kInternal:
      return absl::InternalError(text);
    case ErrorKind::kDomainError:
      return absl::OutOfRangeError(text);
    default:
      return absl::InvalidArgumentError(text);
  }
}

std::string ErrorKindOf(const absl::Status& status) {
  absl::string_view message = status.message();
  size_t colon = message.find(": ");
  if (colon != absl::string_view::npos) {
    absl::string_view head = message.substr(0, colon);
    if (!head.empty() && head.find(' ') == absl::string_view::npos) {
      return std::string(head);
    }
  }
  return absl::StatusCodeToString(status.code());
}

}  // namespace erasure
