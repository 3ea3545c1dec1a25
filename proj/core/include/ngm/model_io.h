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

// Versioned text model files:
//
//   ngm-model 1
//   activation tanh|relu
//   output softmax|squared-l2|sigmoid
//   dims <d0> <d1> ... <dk>
//   <one parameter per line, row-major weights then bias, layer by layer>
//
// Values use the shortest decimal form that parses back to the same double.

#ifndef NGM_MODEL_IO_H_
#define NGM_MODEL_IO_H_

#include <istream>
#include <ostream>
#include <string_view>

#include "ngm/nn.h"

namespace ngm {

struct SavedModel {
  ModelParams params;
  SupervisedKind output = SupervisedKind::kSoftmaxCrossEntropy;
};

void WriteModel(std::ostream& out, const ModelParams& params,
                SupervisedKind output);
SavedModel ReadModel(std::istream& in, std::string_view source = "<model>");

std::string_view ActivationName(Activation a);
Activation ParseActivation(std::string_view name);
std::string_view SupervisedKindName(SupervisedKind kind);
SupervisedKind ParseSupervisedKind(std::string_view name);
std::string_view DistanceMetricName(DistanceMetric metric);
DistanceMetric ParseDistanceMetric(std::string_view name);
std::string_view RepresentationName(Representation r);
Representation ParseRepresentation(std::string_view name);

}  // namespace ngm

#endif  // NGM_MODEL_IO_H_
