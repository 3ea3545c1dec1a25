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

// Graph-regularized training of feed-forward networks.
//
// The objective adds, to the supervised cost of the labeled nodes, a weighted
// distance between the hidden representations of the endpoints of every edge,
// with one weight per edge type (labeled-labeled, labeled-unlabeled,
// unlabeled-unlabeled). Rewriting the supervised cost of a labeled node u as
// |u| equal shares, one per incident edge, makes the objective a sum over
// edges, which is what the minibatch loop samples.

#ifndef NGM_TRAINER_H_
#define NGM_TRAINER_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ngm/graph.h"
#include "ngm/matrix.h"
#include "ngm/nn.h"
#include "ngm/samplers.h"

namespace ngm {

// Streams mixed into NgmConfig::seed with DeriveSeed: parameter init, edge
// batches, isolated-node batches.
inline constexpr std::uint64_t kInitStream = 0;
inline constexpr std::uint64_t kEdgeStream = 1;
inline constexpr std::uint64_t kNodeStream = 2;

struct NgmConfig {
  std::vector<int> hidden_dims{50};
  Activation activation = Activation::kTanh;
  double alpha_ll = 0.1;
  double alpha_lu = 0.1;
  double alpha_uu = 0.1;
  DistanceMetric metric = DistanceMetric::kSquaredL2;
  bool symmetric_distance = false;
  Representation representation = Representation::kLastHidden;
  SupervisedKind supervised = SupervisedKind::kSoftmaxCrossEntropy;
  double learning_rate = 0.1;
  double momentum = 0.0;
  int batch_size = 32;
  // Batch size of the isolated-labeled-node stream; 0 means batch_size.
  int node_batch_size = 0;
  int node_batches_per_step = 1;
  int epochs = 20;
  SamplerMode sampler = SamplerMode::kNeighborhood;
  // Leave unlabeled-unlabeled edges out of the sampled epochs.
  bool drop_uu = false;
  std::uint64_t seed = 1;

  void Validate() const;
};

// Network layer sizes for `config` on the given input/output widths.
std::vector<int> LayerDims(const NgmConfig& config, int input_dim,
                           int num_classes);

struct ObjectiveTerms {
  double supervised = 0.0;
  // Unscaled sums of w_uv * d(h_u, h_v) per edge type.
  double reg_ll = 0.0;
  double reg_lu = 0.0;
  double reg_uu = 0.0;
  double total = 0.0;
};

// Sum of c(g(x_n), y_n) over labeled nodes in increasing id order.
double SupervisedCost(const ModelParams& params, const NodeFeatures& features,
                      const NodeLabels& labels, const NgmConfig& config);

// supervised + alpha_ll*reg_ll + alpha_lu*reg_lu + alpha_uu*reg_uu, with
// `total` accumulated in that order starting from SupervisedCost.
ObjectiveTerms FullObjective(const ModelParams& params, const Graph& graph,
                             const EdgePartition& partition,
                             const NodeFeatures& features,
                             const NodeLabels& labels, const NgmConfig& config);

// Edge-decomposed terms of one batch (not normalized by its size):
//   LL: alpha_ll w d + c(u)/|u| + c(v)/|v|
//   LU: alpha_lu w d + c(l)/|l|   for the labeled endpoint l
//   UU: alpha_uu w d
// When `gradient` is non-null the exact gradient is added to it.
double EdgeBatchLoss(const ModelParams& params, const Graph& graph,
                     const NodeFeatures& features, const NodeLabels& labels,
                     const EdgeBatch& batch, const NgmConfig& config,
                     std::vector<double>* gradient);

// Labeled nodes with no incident edge; the edge decomposition cannot reach
// their supervised cost.
std::vector<int> IsolatedLabeledNodes(const Graph& graph,
                                      const NodeLabels& labels);

// Supervised cost summed over `nodes` (repeats allowed).
double NodeBatchLoss(const ModelParams& params, const NodeFeatures& features,
                     const NodeLabels& labels, std::span<const int> nodes,
                     const NgmConfig& config, std::vector<double>* gradient);

// Sum of EdgeBatchLoss over `batches` plus the supervised cost of every
// isolated labeled node. Equals FullObjective(...).total when the batches
// cover every edge once.
double EdgeDecomposedObjective(const ModelParams& params, const Graph& graph,
                               const NodeFeatures& features,
                               const NodeLabels& labels,
                               std::span<const EdgeBatch> batches,
                               const NgmConfig& config);

struct EvalMetrics {
  int num_examples = 0;
  double accuracy = 0.0;
  double macro_f1 = 0.0;
  double micro_f1 = 0.0;
};

struct EpochRecord {
  int epoch = 0;
  int steps = 0;
  ObjectiveTerms objective;
  std::optional<EvalMetrics> eval;
};

struct RoundRecord {
  int round = 0;
  int labeled = 0;  // labeled-set size the round trained on
  int added = 0;    // nodes pseudo-labeled after the round
  std::optional<EvalMetrics> eval;
};

struct TrainHistory {
  std::vector<EpochRecord> epochs;
  std::vector<RoundRecord> rounds;  // self-training only
  ModelParams params;
  NodeLabels final_labels;
  int isolated_labeled = 0;
  int edges_per_epoch = 0;
};

// Minibatch SGD: each step takes one edge batch, and when isolated labeled
// nodes exist, node_batches_per_step class-balanced batches of them. The edge
// part is divided by the edge batch size; the node part is weighted so that
// a step is an unbiased estimate of the full objective divided by the number
// of edges per epoch. `eval_labels`, when given, is scored after every epoch.
TrainHistory Train(const Graph& graph, const NodeFeatures& features,
                   const NodeLabels& labels, const NgmConfig& config,
                   const NodeLabels* eval_labels = nullptr);

// Round r trains from scratch on the current labeled set, then gives every
// unlabeled neighbor of a labeled node the model's prediction. Existing labels
// are never changed. Stops early once no unlabeled neighbor remains.
TrainHistory SelfTrain(const Graph& graph, const NodeFeatures& features,
                       const NodeLabels& seed_labels, const NgmConfig& config,
                       int rounds, const NodeLabels* eval_labels = nullptr);

struct Predictions {
  Matrix probabilities;    // softmax rows, or per-class sigmoids (multi-label)
  std::vector<int> labels;  // argmax, ties to the lowest index
};

Predictions Predict(const ModelParams& params, const NodeFeatures& features,
                    SupervisedKind kind = SupervisedKind::kSoftmaxCrossEntropy);

// Predicted class sets: the argmax for single-label kinds, classes with
// probability > 0.5 for kSigmoidCrossEntropy.
std::vector<std::vector<int>> PredictedSets(const Predictions& predictions,
                                            SupervisedKind kind);

// Scores the labeled nodes of `truth`.
EvalMetrics EvaluateModel(const ModelParams& params,
                          const NodeFeatures& features, const NodeLabels& truth,
                          SupervisedKind kind);

std::string TrainHistoryToJson(const TrainHistory& history, int indent = 2);

}  // namespace ngm

#endif  // NGM_TRAINER_H_
