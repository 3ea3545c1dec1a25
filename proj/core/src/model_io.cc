// Copyright 2026 The NGM Toolkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ngm/model_io.h"

#include <sstream>
#include <string>
#include <vector>

#include "ngm/error.h"
#include "ngm/graph_io.h"

namespace ngm {
namespace {

constexpr int kFormatVersion = 1;

[[noreturn]] void Bad(std::string_view source, const std::string& message) {
  Fail(ErrorCode::kParse, std::string(source) + ": " + message);
}

std::string ExpectLine(std::istream& in, std::string_view source,
                       std::string_view key) {
  std::string line;
  if (!std::getline(in, line)) Bad(source, "missing '" + std::string(key) + "' line");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const std::string prefix = std::string(key) + " ";
  if (line.rfind(prefix, 0) != 0) {
    Bad(source, "expected '" + std::string(key) + "', got '" + line + "'");
  }
  return line.substr(prefix.size());
}

}  // namespace

std::string_view ActivationName(Activation a) {
  return a == Activation::kRelu ? "relu" : "tanh";
}

Activation ParseActivation(std::string_view name) {
  if (name == "relu") return Activation::kRelu;
  if (name == "tanh") return Activation::kTanh;
  Fail(ErrorCode::kInvalidConfig, "unknown activation '" + std::string(name) + "'");
}

std::string_view SupervisedKindName(SupervisedKind kind) {
  switch (kind) {
    case SupervisedKind::kSoftmaxCrossEntropy:
      return "softmax";
    case SupervisedKind::kSquaredL2:
      return "squared-l2";
    case SupervisedKind::kSigmoidCrossEntropy:
      return "sigmoid";
  }
  return "softmax";
}

SupervisedKind ParseSupervisedKind(std::string_view name) {
  if (name == "softmax") return SupervisedKind::kSoftmaxCrossEntropy;
  if (name == "squared-l2") return SupervisedKind::kSquaredL2;
  if (name == "sigmoid") return SupervisedKind::kSigmoidCrossEntropy;
  Fail(ErrorCode::kInvalidConfig, "unknown loss '" + std::string(name) + "'");
}

std::string_view DistanceMetricName(DistanceMetric metric) {
  switch (metric) {
    case DistanceMetric::kL1:
      return "l1";
    case DistanceMetric::kSquaredL2:
      return "l2";
    case DistanceMetric::kCrossEntropy:
      return "cross-entropy";
  }
  return "l2";
}

DistanceMetric ParseDistanceMetric(std::string_view name) {
  if (name == "l1") return DistanceMetric::kL1;
  if (name == "l2" || name == "squared-l2") return DistanceMetric::kSquaredL2;
  if (name == "cross-entropy") return DistanceMetric::kCrossEntropy;
  Fail(ErrorCode::kInvalidConfig, "unknown distance metric '" + std::string(name) + "'");
}

std::string_view RepresentationName(Representation r) {
  return r == Representation::kLogits ? "logits" : "last-hidden";
}

Representation ParseRepresentation(std::string_view name) {
  if (name == "last-hidden") return Representation::kLastHidden;
  if (name == "logits") return Representation::kLogits;
  Fail(ErrorCode::kInvalidConfig, "unknown representation '" + std::string(name) + "'");
}

void WriteModel(std::ostream& out, const ModelParams& params,
                SupervisedKind output) {
  out << "ngm-model " << kFormatVersion << '\n';
  out << "activation " << ActivationName(params.activation()) << '\n';
  out << "output " << SupervisedKindName(output) << '\n';
  out << "dims";
  for (int d : params.dims()) out << ' ' << d;
  out << '\n';
  for (double v : params.values()) out << FormatDouble(v) << '\n';
}

SavedModel ReadModel(std::istream& in, std::string_view source) {
  const std::string version = ExpectLine(in, source, "ngm-model");
  if (version != std::to_string(kFormatVersion)) {
    Bad(source, "unsupported model format version " + version);
  }
  const Activation activation = ParseActivation(ExpectLine(in, source, "activation"));
  const SupervisedKind output = ParseSupervisedKind(ExpectLine(in, source, "output"));
  std::istringstream dims_line(ExpectLine(in, source, "dims"));
  std::vector<int> dims;
  int d = 0;
  while (dims_line >> d) dims.push_back(d);
  if (!dims_line.eof()) Bad(source, "malformed dims line");

  SavedModel model{ModelParams(dims, activation), output};
  std::string line;
  std::size_t i = 0;
  auto values = model.params.values();
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (i >= values.size()) Bad(source, "more parameter values than dims allow");
    values[i++] = ParseDouble(line);
  }
  if (i != values.size()) {
    Bad(source, "expected " + std::to_string(values.size()) +
                    " parameter values, found " + std::to_string(i));
  }
  return model;
}

}  // namespace ngm
