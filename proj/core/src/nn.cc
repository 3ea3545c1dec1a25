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

#include "ngm/nn.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <utility>

#include "ngm/error.h"

namespace ngm {
namespace {

double Activate(Activation a, double z) {
  return a == Activation::kRelu ? (z > 0.0 ? z : 0.0) : std::tanh(z);
}

// Derivative of the activation given its pre-activation and output.
double ActivationSlope(Activation a, double z, double y) {
  return a == Activation::kRelu ? (z > 0.0 ? 1.0 : 0.0) : 1.0 - y * y;
}

void CheckSameLength(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    Fail(ErrorCode::kShape, std::string(what) + ": length " +
                                std::to_string(a) + " vs " +
                                std::to_string(b));
  }
}

std::vector<double> LogSoftmax(std::span<const double> z) {
  const double m = *std::max_element(z.begin(), z.end());
  double sum = 0.0;
  for (double v : z) sum += std::exp(v - m);
  const double lse = m + std::log(sum);
  std::vector<double> out(z.size());
  for (std::size_t k = 0; k < z.size(); ++k) out[k] = z[k] - lse;
  return out;
}

// CE(softmax(target_logits) as target, softmax(pred_logits) as prediction).
DistanceValue DirectedCrossEntropy(std::span<const double> pred_logits,
                                   std::span<const double> target_logits) {
  const std::vector<double> p = Softmax(target_logits);
  const std::vector<double> log_q = LogSoftmax(pred_logits);
  DistanceValue out;
  for (std::size_t k = 0; k < p.size(); ++k) out.value -= p[k] * log_q[k];
  out.grad_u.resize(p.size());
  out.grad_v.resize(p.size());
  for (std::size_t k = 0; k < p.size(); ++k) {
    out.grad_u[k] = std::exp(log_q[k]) - p[k];
    out.grad_v[k] = -p[k] * (log_q[k] + out.value);
  }
  return out;
}

ForwardTrace RunLayers(const ModelParams& params, std::vector<int> indices,
                       std::vector<double> values, Representation which) {
  ForwardTrace trace;
  trace.representation_layer = RepresentationLayer(params, which);
  trace.input_indices = std::move(indices);
  trace.input_values = std::move(values);
  const int num_layers = params.num_layers();
  trace.pre.resize(num_layers);
  trace.act.resize(num_layers);

  for (int k = 0; k < num_layers; ++k) {
    const int in = params.dims()[k];
    const int out = params.dims()[k + 1];
    const auto w = params.weights(k);
    const auto b = params.bias(k);
    std::vector<double>& z = trace.pre[k];
    z.assign(b.begin(), b.end());
    if (k == 0) {
      for (int j = 0; j < out; ++j) {
        const double* row = w.data() + static_cast<std::size_t>(j) * in;
        double acc = 0.0;
        for (std::size_t t = 0; t < trace.input_indices.size(); ++t) {
          acc += row[trace.input_indices[t]] * trace.input_values[t];
        }
        z[j] += acc;
      }
    } else {
      const std::vector<double>& x = trace.act[k - 1];
      for (int j = 0; j < out; ++j) {
        const double* row = w.data() + static_cast<std::size_t>(j) * in;
        double acc = 0.0;
        for (int i = 0; i < in; ++i) acc += row[i] * x[i];
        z[j] += acc;
      }
    }
    if (k + 1 == num_layers) {
      trace.act[k] = z;
    } else {
      trace.act[k].resize(out);
      for (int j = 0; j < out; ++j) {
        trace.act[k][j] = Activate(params.activation(), z[j]);
      }
    }
  }
  return trace;
}

}  // namespace

ModelParams::ModelParams(std::vector<int> dims, Activation activation)
    : dims_(std::move(dims)), activation_(activation) {
  if (dims_.size() < 2) {
    Fail(ErrorCode::kInvalidConfig,
         "a network needs at least an input and an output layer");
  }
  std::size_t total = 0;
  for (std::size_t k = 0; k < dims_.size(); ++k) {
    if (dims_[k] <= 0) {
      Fail(ErrorCode::kInvalidConfig,
           "layer " + std::to_string(k) + " has non-positive size " +
               std::to_string(dims_[k]));
    }
    if (k + 1 < dims_.size()) {
      offsets_.push_back(total);
      total += static_cast<std::size_t>(dims_[k + 1]) * (dims_[k] + 1);
    }
  }
  values_.assign(total, 0.0);
}

std::span<double> ModelParams::weights(int layer) {
  return {values_.data() + weight_offset(layer),
          static_cast<std::size_t>(dims_[layer + 1]) * dims_[layer]};
}
std::span<const double> ModelParams::weights(int layer) const {
  return {values_.data() + weight_offset(layer),
          static_cast<std::size_t>(dims_[layer + 1]) * dims_[layer]};
}
std::span<double> ModelParams::bias(int layer) {
  return {values_.data() + bias_offset(layer),
          static_cast<std::size_t>(dims_[layer + 1])};
}
std::span<const double> ModelParams::bias(int layer) const {
  return {values_.data() + bias_offset(layer),
          static_cast<std::size_t>(dims_[layer + 1])};
}

ModelParams InitParams(std::span<const int> layer_dims, Activation activation,
                       std::uint64_t seed) {
  ModelParams params(std::vector<int>(layer_dims.begin(), layer_dims.end()),
                     activation);
  std::mt19937_64 rng(seed);
  for (int k = 0; k < params.num_layers(); ++k) {
    const double fan_in = layer_dims[k];
    const double fan_out = layer_dims[k + 1];
    const double s = std::sqrt(6.0 / (fan_in + fan_out));
    std::uniform_real_distribution<double> dist(-s, s);
    for (double& w : params.weights(k)) w = dist(rng);
  }
  return params;
}

int RepresentationLayer(const ModelParams& params, Representation which) {
  if (which == Representation::kLogits) return params.num_layers() - 1;
  if (params.num_layers() < 2) {
    Fail(ErrorCode::kInvalidConfig,
         "last-hidden representation requested on a network without hidden "
         "layers");
  }
  return params.num_layers() - 2;
}

ForwardTrace Forward(const ModelParams& params, std::span<const double> x,
                     Representation which) {
  CheckSameLength(x.size(), static_cast<std::size_t>(params.input_dim()),
                  "forward input");
  std::vector<int> indices(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) indices[i] = static_cast<int>(i);
  return RunLayers(params, std::move(indices),
                   std::vector<double>(x.begin(), x.end()), which);
}

ForwardTrace Forward(const ModelParams& params, SparseRow x,
                     Representation which) {
  CheckSameLength(x.indices.size(), x.values.size(), "sparse input");
  for (int idx : x.indices) {
    if (idx < 0 || idx >= params.input_dim()) {
      Fail(ErrorCode::kShape, "sparse input index " + std::to_string(idx) +
                                  " outside input dimension " +
                                  std::to_string(params.input_dim()));
    }
  }
  return RunLayers(params,
                   std::vector<int>(x.indices.begin(), x.indices.end()),
                   std::vector<double>(x.values.begin(), x.values.end()),
                   which);
}

std::vector<double> Softmax(std::span<const double> logits) {
  std::vector<double> out = LogSoftmax(logits);
  for (double& v : out) v = std::exp(v);
  return out;
}

LossValue SoftmaxCrossEntropy(std::span<const double> logits, int label) {
  if (label < 0 || label >= static_cast<int>(logits.size())) {
    Fail(ErrorCode::kInvalidLabel, "label " + std::to_string(label) +
                                       " outside [0, " +
                                       std::to_string(logits.size()) + ")");
  }
  const double m = *std::max_element(logits.begin(), logits.end());
  double sum = 0.0;
  for (double v : logits) sum += std::exp(v - m);
  const double log_sum = std::log(sum);
  LossValue out;
  out.value = (m - logits[label]) + log_sum;
  out.gradient.resize(logits.size());
  for (std::size_t k = 0; k < logits.size(); ++k) {
    out.gradient[k] = std::exp(logits[k] - m - log_sum);
  }
  out.gradient[label] -= 1.0;
  return out;
}

LossValue SquaredL2Loss(std::span<const double> output,
                        std::span<const double> target) {
  CheckSameLength(output.size(), target.size(), "squared-l2 loss");
  LossValue out;
  out.gradient.resize(output.size());
  for (std::size_t k = 0; k < output.size(); ++k) {
    const double r = output[k] - target[k];
    out.value += r * r;
    out.gradient[k] = 2.0 * r;
  }
  return out;
}

LossValue SigmoidCrossEntropy(std::span<const double> logits,
                              std::span<const int> positives) {
  std::vector<double> target(logits.size(), 0.0);
  for (int c : positives) {
    if (c < 0 || c >= static_cast<int>(logits.size())) {
      Fail(ErrorCode::kInvalidLabel, "label " + std::to_string(c) +
                                         " outside [0, " +
                                         std::to_string(logits.size()) + ")");
    }
    target[c] = 1.0;
  }
  LossValue out;
  out.gradient.resize(logits.size());
  for (std::size_t k = 0; k < logits.size(); ++k) {
    const double z = logits[k];
    // softplus(z) - t*z, written to avoid overflow.
    out.value += std::max(z, 0.0) - target[k] * z + std::log1p(std::exp(-std::abs(z)));
    const double sig =
        z >= 0.0 ? 1.0 / (1.0 + std::exp(-z)) : std::exp(z) / (1.0 + std::exp(z));
    out.gradient[k] = sig - target[k];
  }
  return out;
}

LossValue SupervisedLoss(std::span<const double> output,
                         std::span<const int> classes, SupervisedKind kind) {
  switch (kind) {
    case SupervisedKind::kSoftmaxCrossEntropy:
      if (classes.size() != 1) {
        Fail(ErrorCode::kInvalidLabel,
             "softmax cross-entropy needs exactly one label, got " +
                 std::to_string(classes.size()));
      }
      return SoftmaxCrossEntropy(output, classes.front());
    case SupervisedKind::kSquaredL2: {
      std::vector<double> target(output.size(), 0.0);
      for (int c : classes) {
        if (c < 0 || c >= static_cast<int>(output.size())) {
          Fail(ErrorCode::kInvalidLabel,
               "label " + std::to_string(c) + " outside [0, " +
                   std::to_string(output.size()) + ")");
        }
        target[c] = 1.0;
      }
      return SquaredL2Loss(output, target);
    }
    case SupervisedKind::kSigmoidCrossEntropy:
      return SigmoidCrossEntropy(output, classes);
  }
  Fail(ErrorCode::kInternal, "unknown supervised loss kind");
}

DistanceValue HiddenDistance(std::span<const double> h_u,
                             std::span<const double> h_v,
                             DistanceMetric metric, bool symmetric) {
  CheckSameLength(h_u.size(), h_v.size(), "hidden distance");
  const std::size_t n = h_u.size();
  DistanceValue out;
  switch (metric) {
    case DistanceMetric::kL1:
      out.grad_u.resize(n);
      out.grad_v.resize(n);
      for (std::size_t k = 0; k < n; ++k) {
        const double r = h_u[k] - h_v[k];
        out.value += std::abs(r);
        const double s = r > 0.0 ? 1.0 : (r < 0.0 ? -1.0 : 0.0);
        out.grad_u[k] = s;
        out.grad_v[k] = -s;
      }
      return out;
    case DistanceMetric::kSquaredL2:
      out.grad_u.resize(n);
      out.grad_v.resize(n);
      for (std::size_t k = 0; k < n; ++k) {
        const double r = h_u[k] - h_v[k];
        out.value += r * r;
        out.grad_u[k] = 2.0 * r;
        out.grad_v[k] = -2.0 * r;
      }
      return out;
    case DistanceMetric::kCrossEntropy: {
      if (n == 0) Fail(ErrorCode::kShape, "cross-entropy over empty vectors");
      DistanceValue forward = DirectedCrossEntropy(h_u, h_v);
      if (!symmetric) return forward;
      const DistanceValue reverse = DirectedCrossEntropy(h_v, h_u);
      out.value = 0.5 * (forward.value + reverse.value);
      out.grad_u.resize(n);
      out.grad_v.resize(n);
      for (std::size_t k = 0; k < n; ++k) {
        out.grad_u[k] = 0.5 * (forward.grad_u[k] + reverse.grad_v[k]);
        out.grad_v[k] = 0.5 * (forward.grad_v[k] + reverse.grad_u[k]);
      }
      return out;
    }
  }
  Fail(ErrorCode::kInternal, "unknown distance metric");
}

void Backward(const ModelParams& params, const ForwardTrace& trace,
              std::span<const double> d_hidden,
              std::span<const double> d_logits, std::span<double> gradient) {
  CheckSameLength(gradient.size(), params.size(), "gradient buffer");
  const int num_layers = params.num_layers();
  const int rep = trace.representation_layer;
  if (!d_hidden.empty()) {
    CheckSameLength(d_hidden.size(), trace.act[rep].size(), "d_hidden");
  }
  if (!d_logits.empty()) {
    CheckSameLength(d_logits.size(), trace.pre.back().size(), "d_logits");
  }

  // delta holds d(loss)/d(pre-activation) of the current layer.
  std::vector<double> delta(params.output_dim(), 0.0);
  if (!d_logits.empty()) std::copy(d_logits.begin(), d_logits.end(), delta.begin());
  if (rep == num_layers - 1 && !d_hidden.empty()) {
    for (std::size_t j = 0; j < delta.size(); ++j) delta[j] += d_hidden[j];
  }

  for (int k = num_layers - 1; k >= 0; --k) {
    const int in = params.dims()[k];
    const int out = params.dims()[k + 1];
    double* gw = gradient.data() + params.weight_offset(k);
    double* gb = gradient.data() + params.bias_offset(k);
    if (k == 0) {
      for (int j = 0; j < out; ++j) {
        if (delta[j] == 0.0) continue;
        double* row = gw + static_cast<std::size_t>(j) * in;
        for (std::size_t t = 0; t < trace.input_indices.size(); ++t) {
          row[trace.input_indices[t]] += delta[j] * trace.input_values[t];
        }
      }
    } else {
      const std::vector<double>& x = trace.act[k - 1];
      for (int j = 0; j < out; ++j) {
        if (delta[j] == 0.0) continue;
        double* row = gw + static_cast<std::size_t>(j) * in;
        for (int i = 0; i < in; ++i) row[i] += delta[j] * x[i];
      }
    }
    for (int j = 0; j < out; ++j) gb[j] += delta[j];
    if (k == 0) break;

    const auto w = params.weights(k);
    std::vector<double> d_act(in, 0.0);
    for (int j = 0; j < out; ++j) {
      if (delta[j] == 0.0) continue;
      const double* row = w.data() + static_cast<std::size_t>(j) * in;
      for (int i = 0; i < in; ++i) d_act[i] += row[i] * delta[j];
    }
    if (rep == k - 1 && !d_hidden.empty()) {
      for (int i = 0; i < in; ++i) d_act[i] += d_hidden[i];
    }
    delta.assign(in, 0.0);
    for (int i = 0; i < in; ++i) {
      delta[i] = d_act[i] * ActivationSlope(params.activation(),
                                            trace.pre[k - 1][i],
                                            trace.act[k - 1][i]);
    }
  }
}

double EvaluateLoss(const ModelParams& params,
                    std::span<const ForwardTrace> traces, const LossSpec& spec,
                    std::vector<double>* gradient) {
  const std::size_t n = traces.size();
  auto check_trace = [n](int t) {
    if (t < 0 || static_cast<std::size_t>(t) >= n) {
      Fail(ErrorCode::kShape, "loss term refers to trace " +
                                  std::to_string(t) + " of " +
                                  std::to_string(n));
    }
  };
  std::vector<std::vector<double>> d_logits;
  std::vector<std::vector<double>> d_hidden;
  if (gradient != nullptr) {
    d_logits.resize(n);
    d_hidden.resize(n);
  }
  auto accumulate = [](std::vector<double>& acc, const std::vector<double>& g,
                       double w) {
    if (acc.empty()) acc.assign(g.size(), 0.0);
    for (std::size_t k = 0; k < g.size(); ++k) acc[k] += w * g[k];
  };

  double total = 0.0;
  for (const SupervisedTerm& term : spec.supervised_terms) {
    if (term.weight == 0.0) continue;
    check_trace(term.trace);
    const LossValue loss =
        SupervisedLoss(traces[term.trace].logits(), term.classes, spec.supervised);
    total += term.weight * loss.value;
    if (gradient != nullptr) {
      accumulate(d_logits[term.trace], loss.gradient, term.weight);
    }
  }
  for (const DistanceTerm& term : spec.distance_terms) {
    if (term.weight == 0.0) continue;
    check_trace(term.u);
    check_trace(term.v);
    const DistanceValue d =
        HiddenDistance(traces[term.u].hidden(), traces[term.v].hidden(),
                       spec.metric, spec.symmetric_distance);
    total += term.weight * d.value;
    if (gradient != nullptr) {
      accumulate(d_hidden[term.u], d.grad_u, term.weight);
      accumulate(d_hidden[term.v], d.grad_v, term.weight);
    }
  }

  if (gradient != nullptr) {
    if (gradient->empty()) gradient->assign(params.size(), 0.0);
    for (std::size_t t = 0; t < n; ++t) {
      if (d_logits[t].empty() && d_hidden[t].empty()) continue;
      Backward(params, traces[t], d_hidden[t], d_logits[t], *gradient);
    }
  }
  return total;
}

std::vector<double> FiniteDiffGradient(
    const ModelParams& params,
    const std::function<double(const ModelParams&)>& loss, double epsilon) {
  if (!(epsilon > 0.0)) {
    Fail(ErrorCode::kInvalidConfig, "finite-difference epsilon must be > 0");
  }
  ModelParams probe = params;
  std::vector<double> grad(params.size());
  for (std::size_t i = 0; i < params.size(); ++i) {
    const double saved = probe.values()[i];
    probe.values()[i] = saved + epsilon;
    const double up = loss(probe);
    probe.values()[i] = saved - epsilon;
    const double down = loss(probe);
    probe.values()[i] = saved;
    grad[i] = (up - down) / (2.0 * epsilon);
  }
  return grad;
}

SgdOptimizer::SgdOptimizer(double learning_rate, double momentum)
    : learning_rate_(learning_rate), momentum_(momentum) {
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
    Fail(ErrorCode::kInvalidConfig, "learning rate must be > 0");
  }
  if (!(momentum >= 0.0 && momentum < 1.0)) {
    Fail(ErrorCode::kInvalidConfig, "momentum must lie in [0, 1)");
  }
}

void SgdOptimizer::Step(ModelParams& params, std::span<const double> gradient) {
  CheckSameLength(gradient.size(), params.size(), "sgd gradient");
  for (std::size_t i = 0; i < gradient.size(); ++i) {
    if (!std::isfinite(gradient[i])) {
      Fail(ErrorCode::kNumericFault,
           "non-finite gradient at parameter " + std::to_string(i));
    }
  }
  if (velocity_.size() != gradient.size()) velocity_.assign(gradient.size(), 0.0);
  auto theta = params.values();
  for (std::size_t i = 0; i < gradient.size(); ++i) {
    velocity_[i] = momentum_ * velocity_[i] + gradient[i];
    theta[i] -= learning_rate_ * velocity_[i];
  }
}

}  // namespace ngm
