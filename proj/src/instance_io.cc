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

#include "erasure/instance_io.h"

#include <charconv>
#include <fstream>
#include <sstream>

#include "absl/strings/str_cat.h"
#include "erasure/cost.h"
#include "erasure/errors.h"
#include "json.hpp"

namespace erasure {
namespace {

using json = nlohmann::json;

absl::Status ParseErrorStatus(const std::string& message) {
  return MakeError(ErrorKind::kParseError, message);
}

absl::StatusOr<double> ParseDecimal(const std::string& text) {
  double value = 0.0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) {
    return ParseErrorStatus(absl::StrCat("not a number: \"", text, "\""));
  }
  return value;
}

absl::StatusOr<double> ParseEntry(const json& entry, const std::string& where) {
  if (entry.is_number()) return entry.get<double>();
  if (entry.is_string()) {
    absl::StatusOr<double> v = ParseProbability(entry.get<std::string>());
    if (!v.ok()) {
      return ParseErrorStatus(absl::StrCat(where, ": ", v.status().message()));
    }
    return v;
  }
  return ParseErrorStatus(absl::StrCat(where, ": expected number or string"));
}

absl::StatusOr<Matrix> ParseMatrix(const json& doc, const std::string& key,
                                   int rows, int cols) {
  if (!doc.contains(key)) {
    return ParseErrorStatus(absl::StrCat("missing \"", key, "\""));
  }
  const json& m = doc.at(key);
  if (!m.is_array() || static_cast<int>(m.size()) != rows) {
    return MakeError(ErrorKind::kDimensionMismatch,
                     absl::StrCat("\"", key, "\" must have ", rows, " rows"));
  }
  Matrix out(rows, cols);
  for (int r = 0; r < rows; ++r) {
    const json& row = m.at(r);
    if (!row.is_array() || static_cast<int>(row.size()) != cols) {
      return MakeError(ErrorKind::kDimensionMismatch,
                       absl::StrCat("\"", key, "\" row ", r, " must have ",
                                    cols, " entries"));
    }
    for (int c = 0; c < cols; ++c) {
      absl::StatusOr<double> v =
          ParseEntry(row.at(c), absl::StrCat(key, "[", r, "][", c, "]"));
      if (!v.ok()) return v.status();
      out(r, c) = *v;
    }
  }
  return out;
}

absl::StatusOr<std::vector<double>> ParseVector(const json& doc,
                                                const std::string& key,
                                                int size) {
  if (!doc.contains(key) || !doc.at(key).is_array() ||
      static_cast<int>(doc.at(key).size()) != size) {
    return MakeError(ErrorKind::kDimensionMismatch,
                     absl::StrCat("\"", key, "\" must have ", size,
                                  " entries"));
  }
  std::vector<double> out(size);
  for (int i = 0; i < size; ++i) {
    absl::StatusOr<double> v =
        ParseEntry(doc.at(key).at(i), absl::StrCat(key, "[", i, "]"));
    if (!v.ok()) return v.status();
    out[i] = *v;
  }
  return out;
}

absl::StatusOr<int> ParseSize(const json& doc, const std::string& key) {
  if (!doc.contains(key) || !doc.at(key).is_number_integer() ||
      doc.at(key).get<int>() < 1) {
    return ParseErrorStatus(
        absl::StrCat("\"", key, "\" must be a positive integer"));
  }
  return doc.at(key).get<int>();
}

json MatrixToJson(const Matrix& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace

absl::StatusOr<double> ParseProbability(const std::string& text) {
  const size_t slash = text.find('/');
  if (slash == std::string::npos) return ParseDecimal(text);
  int64_t num = 0, den = 0;
  const char* begin = text.data();
  auto [p1, e1] = std::from_chars(begin, begin + slash, num);
  auto [p2, e2] =
      std::from_chars(begin + slash + 1, begin + text.size(), den);
  if (e1 != std::errc() || e2 != std::errc() || p1 != begin + slash ||
      p2 != begin + text.size() || den == 0) {
    return ParseErrorStatus(absl::StrCat("not a ratio: \"", text, "\""));
  }
  return static_cast<double>(num) / static_cast<double>(den);
}

absl::StatusOr<InstanceFile> ParseInstanceJson(const std::string& text) {
  json doc = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded() || !doc.is_object()) {
    return ParseErrorStatus("instance is not a JSON object");
  }
  if (doc.contains("format") && doc.at("format") != kInstanceFormat) {
    return ParseErrorStatus(absl::StrCat("unsupported format ",
                                         doc.at("format").dump()));
  }
  absl::StatusOr<int> nx = ParseSize(doc, "x_size");
  if (!nx.ok()) return nx.status();
  absl::StatusOr<int> ny = ParseSize(doc, "y_size");
  if (!ny.ok()) return ny.status();
  absl::StatusOr<int> nk = ParseSize(doc, "xhat_size");
  if (!nk.ok()) return nk.status();

  InstanceFile file;
  if (doc.contains("p_xy")) {
    absl::StatusOr<Matrix> m = ParseMatrix(doc, "p_xy", *nx, *ny);
    if (!m.ok()) return m.status();
    file.p_xy = *std::move(m);
  } else {
    absl::StatusOr<std::vector<double>> px = ParseVector(doc, "p_x", *nx);
    if (!px.ok()) return px.status();
    absl::StatusOr<Matrix> cond = ParseMatrix(doc, "p_y_given_x", *nx, *ny);
    if (!cond.ok()) return cond.status();
    file.p_xy = *cond;
    for (int x = 0; x < *nx; ++x) file.p_xy.row(x) *= (*px)[x];
  }

  if (doc.contains("cost") && doc.at("cost").is_string()) {
    if (doc.at("cost") != "hamming") {
      return ParseErrorStatus("\"cost\" string must be \"hamming\"");
    }
    if (*nx != *nk) {
      return MakeError(ErrorKind::kDimensionMismatch,
                       "hamming cost needs x_size == xhat_size");
    }
    file.cost = HammingCost(*nx).matrix();
  } else {
    absl::StatusOr<Matrix> c = ParseMatrix(doc, "cost", *nx, *nk);
    if (!c.ok()) return c.status();
    file.cost = *std::move(c);
  }

  if (doc.contains("channel")) {
    absl::StatusOr<Matrix> w = ParseMatrix(doc, "channel", *nx, *nk);
    if (!w.ok()) return w.status();
    file.channel = *std::move(w);
  }

  if (doc.contains("labels")) {
    const json& labels = doc.at("labels");
    auto read = [&](const char* key, int size,
                    std::vector<std::string>& out) -> absl::Status {
      if (!labels.contains(key)) return absl::OkStatus();
      const json& arr = labels.at(key);
      if (!arr.is_array() || static_cast<int>(arr.size()) != size) {
        return MakeError(ErrorKind::kDimensionMismatch,
                         absl::StrCat("labels.", key, " must have ", size,
                                      " entries"));
      }
      for (const json& v : arr) {
        if (!v.is_string()) return ParseErrorStatus("labels must be strings");
        out.push_back(v.get<std::string>());
      }
      return absl::OkStatus();
    };
    if (absl::Status s = read("x", *nx, file.labels.x); !s.ok()) return s;
    if (absl::Status s = read("y", *ny, file.labels.y); !s.ok()) return s;
    if (absl::Status s = read("xhat", *nk, file.labels.xhat); !s.ok()) {
      return s;
    }
  }
  return file;
}

std::string SerializeInstanceJson(const InstanceFile& file) {
  json doc;
  doc["format"] = kInstanceFormat;
  doc["x_size"] = file.p_xy.rows();
  doc["y_size"] = file.p_xy.cols();
  doc["xhat_size"] = file.cost.cols();
  doc["p_xy"] = MatrixToJson(file.p_xy);
  doc["cost"] = MatrixToJson(file.cost);
  if (file.channel) doc["channel"] = MatrixToJson(*file.channel);
  json labels = json::object();
  if (!file.labels.x.empty()) labels["x"] = file.labels.x;
  if (!file.labels.y.empty()) labels["y"] = file.labels.y;
  if (!file.labels.xhat.empty()) labels["xhat"] = file.labels.xhat;
  if (!labels.empty()) doc["labels"] = labels;
  return doc.dump(2) + "\n";
}

absl::StatusOr<InstanceFile> ReadInstanceFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    return ParseErrorStatus(absl::StrCat("cannot open ", path));
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseInstanceJson(buffer.str());
}

absl::Status WriteInstanceFile(const std::string& path,
                               const InstanceFile& file) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    return ParseErrorStatus(absl::StrCat("cannot write ", path));
  }
  out << SerializeInstanceJson(file);
  return out ? absl::OkStatus()
             : ParseErrorStatus(absl::StrCat("write failed: ", path));
}

absl::StatusOr<ErasureInstance> ToInstance(const InstanceFile& file) {
  absl::StatusOr<JointSource> src = JointSource::Create(file.p_xy);
  if (!src.ok()) return src.status();
  absl::StatusOr<CostMatrix> cost = CostMatrix::Create(file.cost);
  if (!cost.ok()) return cost.status();
  return ErasureInstance::Create(*std::move(src), *std::move(cost));
}

}  // namespace erasure
