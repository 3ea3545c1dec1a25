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

// Dense feed-forward networks with exact forward/backward passes, the
// supervised and hidden-representation losses used by graph-regularized
// training, plain SGD, and a central-difference gradient oracle.

#ifndef NGM_NN_H_
#define NGM_NN_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "ngm/matrix.h"

namespace ngm {

enum class Activation { kRelu, kTanh };

// Which layer's activations act as the hidden representation h(x).
enum class Representation {
  kLastHidden,  // activations of the final hidden layer
  kLogits,      // pre-softmax output layer
};

enum class SupervisedKind {
  kSoftmaxCrossEntropy,  // single label
  kSquaredL2,            // squared error against a one-hot / multi-hot target
  kSigmoidCrossEntropy,  // one-vs-rest binary heads, multi-label
};

enum class DistanceMetric { kL1, kSquaredL2, kCrossEntropy };

// Parameters of a fully connected network with layer sizes
// dims[0] -> dims[1] -> ... -> dims.back(). All weights and biases live in one
// flat buffer so gradients and optimizer state share its layout.
class ModelParams {
 public:
  ModelParams() = default;
  // Zero-initialized parameters. Throws kInvalidConfig on bad dims.
  ModelParams(std::vector<int> dims, Activation activation);

  const std::vector<int>& dims() const { return dims_; }
  Activation activation() const { return activation_; }
  int num_layers() const { return static_cast<int>(dims_.size()) - 1; }
  int input_dim() const { return dims_.front(); }
  int output_dim() const { return dims_.back(); }
  std::size_t size() const { return values_.size(); }

  // Row-major [dims[k+1] x dims[k]].
  std::span<double> weights(int layer);
  std::span<const double> weights(int layer) const;
  std::span<double> bias(int layer);
  std::span<const double> bias(int layer) const;

  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }

  // Offset of layer k's weight block inside values().
  std::size_t weight_offset(int layer) const { return offsets_[layer]; }
  std::size_t bias_offset(int layer) const {
    return offsets_[layer] +
           static_cast<std::size_t>(dims_[layer + 1]) * dims_[layer];
  }

  friend bool operator==(const ModelParams&, const ModelParams&) = default;

 private:
  std::vector<int> dims_;
  Activation activation_ = Activation::kTanh;
  std::vector<std::size_t> offsets_;
  std::vector<double> values_;
};

// Glorot-uniform weights in [-s, s], s = sqrt(6 / (fan_in + fan_out)), and
// zero biases. Deterministic in `seed`.
ModelParams InitParams(std::span<const int> layer_dims, Activation activation,
                       std::uint64_t seed);

// Intermediates of one forward pass.
struct ForwardTrace {
  std::vector<int> input_indices;
  std::vector<double> input_values;
  std::vector<std::vector<double>> pre;  // per layer
  std::vector<std::vector<double>> act;  // per layer; act.back() == pre.back()
  int representation_layer = 0;

  std::span<const double> logits() const { return pre.back(); }
  std::span<const double> hidden() const { return act[representation_layer]; }
};

// Index into ForwardTrace::act of the chosen representation. Throws
// kInvalidConfig for kLastHidden on a network without hidden layers.
int RepresentationLayer(const ModelParams& params, Representation which);

ForwardTrace Forward(const ModelParams& params, std::span<const double> x,
                     Representation which = Representation::kLastHidden);
ForwardTrace Forward(const ModelParams& params, SparseRow x,
                     Representation which = Representation::kLastHidden);

// A loss value with its gradient w.r.t. the loss's vector argument.
struct LossValue {
  double value = 0.0;
  std::vector<double> gradient;
};

// Uses log-sum-exp with the max logit subtracted.
LossValue SoftmaxCrossEntropy(std::span<const double> logits, int label);
LossValue SquaredL2Loss(std::span<const double> output,
                        std::span<const double> target);
LossValue SigmoidCrossEntropy(std::span<const double> logits,
                              std::span<const int> positives);

// Dispatches on `kind`. For kSoftmaxCrossEntropy `classes` must hold exactly
// one label; for kSquaredL2 it is expanded into a multi-hot target.
LossValue SupervisedLoss(std::span<const double> output,
                         std::span<const int> classes, SupervisedKind kind);

struct DistanceValue {
  double value = 0.0;
  std::vector<double> grad_u;
  std::vector<double> grad_v;
};

// d(h_u, h_v). For kCrossEntropy both arguments are logits and the value is
// CE(target = softmax(h_v), prediction = softmax(h_u)), which is asymmetric;
// `symmetric` averages both directions.
DistanceValue HiddenDistance(std::span<const double> h_u,
                             std::span<const double> h_v,
                             DistanceMetric metric, bool symmetric = false);

// Accumulates d(loss)/d(theta) into `gradient` given upstream gradients on the
// trace's representation layer and on its logits. Either span may be empty.
void Backward(const ModelParams& params, const ForwardTrace& trace,
              std::span<const double> d_hidden,
              std::span<const double> d_logits, std::span<double> gradient);

struct SupervisedTerm {
  int trace = 0;
  double weight = 1.0;
  std::vector<int> classes;
};

struct DistanceTerm {
  int u = 0;
  int v = 0;
  double weight = 1.0;
};

// A weighted sum of supervised and distance terms over a set of traces that
// share one set of parameters.
struct LossSpec {
  SupervisedKind supervised = SupervisedKind::kSoftmaxCrossEntropy;
  DistanceMetric metric = DistanceMetric::kSquaredL2;
  bool symmetric_distance = false;
  std::vector<SupervisedTerm> supervised_terms;
  std::vector<DistanceTerm> distance_terms;
};

// Returns the value of `spec` over `traces`. When `gradient` is non-null it is
// resized to params.size() if empty and the exact gradient of the returned
// value is added to it. Distance terms backpropagate into both endpoints.
// Terms with weight exactly zero are skipped.
double EvaluateLoss(const ModelParams& params,
                    std::span<const ForwardTrace> traces, const LossSpec& spec,
                    std::vector<double>* gradient);

// Central differences, one coordinate at a time.
std::vector<double> FiniteDiffGradient(
    const ModelParams& params,
    const std::function<double(const ModelParams&)>& loss, double epsilon);

// theta <- theta - lr * v, v <- momentum * v + grad.
class SgdOptimizer {
 public:
  SgdOptimizer(double learning_rate, double momentum = 0.0);

  // Throws kNumericFault (leaving params untouched) if the gradient has a
  // non-finite entry.
  void Step(ModelParams& params, std::span<const double> gradient);

  double learning_rate() const { return learning_rate_; }
  double momentum() const { return momentum_; }

 private:
  double learning_rate_;
  double momentum_;
  std::vector<double> velocity_;
};

std::vector<double> Softmax(std::span<const double> logits);

}  // namespace ngm

#endif  // NGM_NN_H_
