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

#include "ngm/trainer.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_map>

#include "json.hpp"
#include "ngm/error.h"
#include "ngm/metrics.h"

namespace ngm {
namespace {

void CheckData(const Graph& graph, const NodeFeatures& features,
               const NodeLabels& labels, const NgmConfig& config) {
  if (features.rows() != graph.num_nodes()) {
    Fail(ErrorCode::kData, "features have " + std::to_string(features.rows()) +
                               " rows for " + std::to_string(graph.num_nodes()) +
                               " nodes");
  }
  if (labels.num_nodes() != graph.num_nodes()) {
    Fail(ErrorCode::kData, "labels cover " + std::to_string(labels.num_nodes()) +
                               " nodes, graph has " +
                               std::to_string(graph.num_nodes()));
  }
  if (config.supervised == SupervisedKind::kSoftmaxCrossEntropy) {
    for (int v : labels.LabeledNodes()) {
      if (labels.classes(v).size() != 1) {
        Fail(ErrorCode::kInvalidLabel,
             "node " + std::to_string(v) +
                 " needs exactly one label for softmax cross-entropy");
      }
    }
  }
}

void CheckParams(const ModelParams& params, const NodeFeatures& features,
                 const NodeLabels& labels) {
  if (params.input_dim() != features.cols()) {
    Fail(ErrorCode::kShape, "network input width " +
                                std::to_string(params.input_dim()) +
                                " does not match feature dimension " +
                                std::to_string(features.cols()));
  }
  if (params.output_dim() != labels.num_classes()) {
    Fail(ErrorCode::kShape, "network output width " +
                                std::to_string(params.output_dim()) +
                                " does not match class count " +
                                std::to_string(labels.num_classes()));
  }
}

double Alpha(const NgmConfig& config, EdgeType type) {
  switch (type) {
    case EdgeType::kLabeledLabeled:
      return config.alpha_ll;
    case EdgeType::kLabeledUnlabeled:
      return config.alpha_lu;
    case EdgeType::kUnlabeledUnlabeled:
      return config.alpha_uu;
  }
  return 0.0;
}

EdgeType TypeOf(const Edge& e, const NodeLabels& labels) {
  const int count =
      static_cast<int>(labels.IsLabeled(e.u)) + labels.IsLabeled(e.v);
  return count == 2   ? EdgeType::kLabeledLabeled
         : count == 1 ? EdgeType::kLabeledUnlabeled
                      : EdgeType::kUnlabeledUnlabeled;
}

LossSpec BaseSpec(const NgmConfig& config) {
  LossSpec spec;
  spec.supervised = config.supervised;
  spec.metric = config.metric;
  spec.symmetric_distance = config.symmetric_distance;
  return spec;
}

// Forward traces for a set of nodes, deduplicated in first-seen order.
class TraceSet {
 public:
  TraceSet(const ModelParams& params, const NodeFeatures& features,
           Representation which)
      : params_(params), features_(features), which_(which) {}

  int Index(int node) {
    const auto [it, inserted] =
        slot_.emplace(node, static_cast<int>(traces_.size()));
    if (inserted) traces_.push_back(Forward(params_, features_.Row(node), which_));
    return it->second;
  }

  std::span<const ForwardTrace> traces() const { return traces_; }

 private:
  const ModelParams& params_;
  const NodeFeatures& features_;
  Representation which_;
  std::unordered_map<int, int> slot_;
  std::vector<ForwardTrace> traces_;
};

std::string DescribeEdges(const Graph& graph, const EdgeBatch& batch) {
  std::string out;
  const std::size_t shown = std::min<std::size_t>(batch.edges.size(), 10);
  for (std::size_t i = 0; i < shown; ++i) {
    const Edge& e = graph.edge(batch.edges[i]);
    if (i > 0) out += ' ';
    out += "(" + std::to_string(e.u) + "," + std::to_string(e.v) + ")";
  }
  if (batch.edges.size() > shown) out += " ...";
  return out;
}

nlohmann::ordered_json MetricsJson(const EvalMetrics& m) {
  return {{"num_examples", m.num_examples},
          {"accuracy", m.accuracy},
          {"macro_f1", m.macro_f1},
          {"micro_f1", m.micro_f1}};
}

}  // namespace

void NgmConfig::Validate() const {
  for (double a : {alpha_ll, alpha_lu, alpha_uu}) {
    if (!(a >= 0.0) || !std::isfinite(a)) {
      Fail(ErrorCode::kInvalidConfig, "alpha values must be finite and >= 0");
    }
  }
  for (int h : hidden_dims) {
    if (h < 1) Fail(ErrorCode::kInvalidConfig, "hidden layer sizes must be >= 1");
  }
  if (representation == Representation::kLastHidden && hidden_dims.empty()) {
    Fail(ErrorCode::kInvalidConfig,
         "last-hidden representation needs at least one hidden layer");
  }
  if (metric == DistanceMetric::kCrossEntropy &&
      representation != Representation::kLogits) {
    Fail(ErrorCode::kInvalidConfig,
         "cross-entropy distance requires the logits representation");
  }
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
    Fail(ErrorCode::kInvalidConfig, "learning rate must be > 0");
  }
  if (!(momentum >= 0.0 && momentum < 1.0)) {
    Fail(ErrorCode::kInvalidConfig, "momentum must lie in [0, 1)");
  }
  if (batch_size < 1) Fail(ErrorCode::kInvalidConfig, "batch size must be >= 1");
  if (node_batch_size < 0) {
    Fail(ErrorCode::kInvalidConfig, "node batch size must be >= 0");
  }
  if (node_batches_per_step < 0) {
    Fail(ErrorCode::kInvalidConfig, "node batches per step must be >= 0");
  }
  if (epochs < 0) Fail(ErrorCode::kInvalidConfig, "epochs must be >= 0");
}

std::vector<int> LayerDims(const NgmConfig& config, int input_dim,
                           int num_classes) {
  std::vector<int> dims{input_dim};
  dims.insert(dims.end(), config.hidden_dims.begin(), config.hidden_dims.end());
  dims.push_back(num_classes);
  return dims;
}

double SupervisedCost(const ModelParams& params, const NodeFeatures& features,
                      const NodeLabels& labels, const NgmConfig& config) {
  CheckParams(params, features, labels);
  double total = 0.0;
  for (int v : labels.LabeledNodes()) {
    const ForwardTrace trace =
        Forward(params, features.Row(v), Representation::kLogits);
    total += SupervisedLoss(trace.logits(), labels.classes(v), config.supervised).value;
  }
  return total;
}

ObjectiveTerms FullObjective(const ModelParams& params, const Graph& graph,
                             const EdgePartition& partition,
                             const NodeFeatures& features,
                             const NodeLabels& labels, const NgmConfig& config) {
  CheckData(graph, features, labels, config);
  CheckParams(params, features, labels);
  ObjectiveTerms terms;
  terms.supervised = SupervisedCost(params, features, labels, config);

  std::vector<std::optional<ForwardTrace>> cache(graph.num_nodes());
  auto hidden = [&](int v) -> std::span<const double> {
    if (!cache[v]) cache[v] = Forward(params, features.Row(v), config.representation);
    return cache[v]->hidden();
  };
  auto regularizer = [&](const std::vector<int>& edges) {
    double sum = 0.0;
    for (int index : edges) {
      const Edge& e = graph.edge(index);
      sum += e.weight * HiddenDistance(hidden(e.u), hidden(e.v), config.metric,
                                       config.symmetric_distance)
                            .value;
    }
    return sum;
  };
  terms.reg_ll = regularizer(partition.ll);
  terms.reg_lu = regularizer(partition.lu);
  terms.reg_uu = regularizer(partition.uu);

  terms.total = terms.supervised;
  terms.total += config.alpha_ll * terms.reg_ll;
  terms.total += config.alpha_lu * terms.reg_lu;
  terms.total += config.alpha_uu * terms.reg_uu;
  return terms;
}

double EdgeBatchLoss(const ModelParams& params, const Graph& graph,
                     const NodeFeatures& features, const NodeLabels& labels,
                     const EdgeBatch& batch, const NgmConfig& config,
                     std::vector<double>* gradient) {
  TraceSet traces(params, features, config.representation);
  LossSpec spec = BaseSpec(config);
  auto supervised_share = [&](int node) {
    const int count = graph.incident_count(node);
    if (count == 0) {
      Fail(ErrorCode::kInternal, "labeled node " + std::to_string(node) +
                                     " inside an edge term has no incident edges");
    }
    spec.supervised_terms.push_back(
        {traces.Index(node), 1.0 / count, labels.classes(node)});
  };
  for (int index : batch.edges) {
    const Edge& e = graph.edge(index);
    const EdgeType type = TypeOf(e, labels);
    if (labels.IsLabeled(e.u)) supervised_share(e.u);
    if (labels.IsLabeled(e.v)) supervised_share(e.v);
    const double weight = Alpha(config, type) * e.weight;
    if (weight != 0.0) {
      spec.distance_terms.push_back({traces.Index(e.u), traces.Index(e.v), weight});
    }
  }
  return EvaluateLoss(params, traces.traces(), spec, gradient);
}

std::vector<int> IsolatedLabeledNodes(const Graph& graph,
                                      const NodeLabels& labels) {
  std::vector<int> out;
  for (int v : labels.LabeledNodes()) {
    if (graph.incident_count(v) == 0) out.push_back(v);
  }
  return out;
}

double NodeBatchLoss(const ModelParams& params, const NodeFeatures& features,
                     const NodeLabels& labels, std::span<const int> nodes,
                     const NgmConfig& config, std::vector<double>* gradient) {
  TraceSet traces(params, features, config.representation);
  LossSpec spec = BaseSpec(config);
  for (int v : nodes) {
    if (!labels.IsLabeled(v)) {
      Fail(ErrorCode::kInternal, "node batch holds unlabeled node " + std::to_string(v));
    }
    spec.supervised_terms.push_back({traces.Index(v), 1.0, labels.classes(v)});
  }
  return EvaluateLoss(params, traces.traces(), spec, gradient);
}

double EdgeDecomposedObjective(const ModelParams& params, const Graph& graph,
                               const NodeFeatures& features,
                               const NodeLabels& labels,
                               std::span<const EdgeBatch> batches,
                               const NgmConfig& config) {
  CheckData(graph, features, labels, config);
  CheckParams(params, features, labels);
  std::vector<bool> seen(graph.num_edges(), false);
  double total = 0.0;
  for (const EdgeBatch& batch : batches) {
    for (int e : batch.edges) {
      if (e < 0 || e >= graph.num_edges() || seen[e]) {
        Fail(ErrorCode::kValidation, "batches repeat or misname edge " + std::to_string(e));
      }
      seen[e] = true;
    }
    total += EdgeBatchLoss(params, graph, features, labels, batch, config, nullptr);
  }
  const std::vector<int> isolated = IsolatedLabeledNodes(graph, labels);
  total += NodeBatchLoss(params, features, labels, isolated, config, nullptr);
  return total;
}

Predictions Predict(const ModelParams& params, const NodeFeatures& features,
                    SupervisedKind kind) {
  Predictions out;
  out.probabilities = Matrix(features.rows(), params.output_dim());
  out.labels.resize(features.rows());
  for (int v = 0; v < features.rows(); ++v) {
    const ForwardTrace trace =
        Forward(params, features.Row(v), Representation::kLogits);
    auto row = out.probabilities.row(v);
    if (kind == SupervisedKind::kSigmoidCrossEntropy) {
      for (std::size_t k = 0; k < row.size(); ++k) {
        row[k] = 1.0 / (1.0 + std::exp(-trace.logits()[k]));
      }
    } else {
      const std::vector<double> p = Softmax(trace.logits());
      std::copy(p.begin(), p.end(), row.begin());
    }
    out.labels[v] =
        static_cast<int>(std::max_element(row.begin(), row.end()) - row.begin());
  }
  return out;
}

std::vector<std::vector<int>> PredictedSets(const Predictions& predictions,
                                            SupervisedKind kind) {
  const Matrix& p = predictions.probabilities;
  std::vector<std::vector<int>> out(p.rows());
  for (int v = 0; v < p.rows(); ++v) {
    if (kind == SupervisedKind::kSigmoidCrossEntropy) {
      for (int k = 0; k < p.cols(); ++k) {
        if (p(v, k) > 0.5) out[v].push_back(k);
      }
    } else {
      out[v] = {predictions.labels[v]};
    }
  }
  return out;
}

EvalMetrics EvaluateModel(const ModelParams& params,
                          const NodeFeatures& features, const NodeLabels& truth,
                          SupervisedKind kind) {
  const Predictions predictions = Predict(params, features, kind);
  const std::vector<std::vector<int>> sets = PredictedSets(predictions, kind);
  std::vector<std::vector<int>> predicted;
  std::vector<std::vector<int>> actual;
  int exact = 0;
  for (int v : truth.LabeledNodes()) {
    predicted.push_back(sets[v]);
    actual.push_back(truth.classes(v));
    exact += sets[v] == truth.classes(v);
  }
  EvalMetrics m;
  m.num_examples = static_cast<int>(actual.size());
  if (m.num_examples == 0) return m;
  m.accuracy = static_cast<double>(exact) / m.num_examples;
  const F1Report f1 = F1Scores(predicted, actual, truth.num_classes());
  m.macro_f1 = f1.macro;
  m.micro_f1 = f1.micro;
  return m;
}

TrainHistory Train(const Graph& graph, const NodeFeatures& features,
                   const NodeLabels& labels, const NgmConfig& config,
                   const NodeLabels* eval_labels) {
  config.Validate();
  CheckData(graph, features, labels, config);
  if (eval_labels != nullptr && eval_labels->num_nodes() != graph.num_nodes()) {
    Fail(ErrorCode::kData, "evaluation labels do not cover the graph's nodes");
  }

  TrainHistory history;
  const std::vector<int> dims =
      LayerDims(config, features.cols(), labels.num_classes());
  history.params = InitParams(dims, config.activation,
                              DeriveSeed(config.seed, kInitStream));
  history.final_labels = labels;

  const EdgePartition partition = PartitionEdges(graph, labels.labeled_mask());
  EdgeBatchSampler edge_sampler(graph, partition, config.batch_size,
                                config.sampler,
                                DeriveSeed(config.seed, kEdgeStream),
                                !config.drop_uu);
  const int edges_per_epoch = edge_sampler.num_edges();
  history.edges_per_epoch = edges_per_epoch;

  const std::vector<int> isolated = IsolatedLabeledNodes(graph, labels);
  history.isolated_labeled = static_cast<int>(isolated.size());
  const int node_batch_size =
      config.node_batch_size > 0 ? config.node_batch_size : config.batch_size;
  std::optional<ClassBalancedSampler> node_sampler;
  if (!isolated.empty() && config.node_batches_per_step > 0) {
    std::vector<int> strata;
    for (int v : isolated) {
      const auto& classes = labels.classes(v);
      strata.push_back(classes.empty() ? labels.num_classes() : classes.front());
    }
    node_sampler.emplace(isolated, strata, node_batch_size,
                         DeriveSeed(config.seed, kNodeStream));
  }

  SgdOptimizer optimizer(config.learning_rate, config.momentum);
  std::vector<double> gradient(history.params.size());
  std::vector<double> part;

  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    const std::vector<EdgeBatch> batches = edge_sampler.NextEpoch();
    int steps = static_cast<int>(batches.size());
    if (steps == 0 && node_sampler) {
      steps = static_cast<int>((isolated.size() + node_batch_size - 1) / node_batch_size);
    }
    for (int step = 0; step < steps; ++step) {
      std::fill(gradient.begin(), gradient.end(), 0.0);
      double loss = 0.0;
      if (step < static_cast<int>(batches.size())) {
        const EdgeBatch& batch = batches[step];
        part.assign(gradient.size(), 0.0);
        const double scale = 1.0 / batch.edges.size();
        const double value = EdgeBatchLoss(history.params, graph, features, labels,
                                           batch, config, &part);
        if (!std::isfinite(value)) {
          Fail(ErrorCode::kNumericFault,
               "non-finite loss at epoch " + std::to_string(epoch) + " step " +
                   std::to_string(step) + ", edges " + DescribeEdges(graph, batch));
        }
        loss += scale * value;
        for (std::size_t i = 0; i < gradient.size(); ++i) gradient[i] = scale * part[i];
      }
      if (node_sampler) {
        // Weight so that E[node part] = isolated cost / edges_per_epoch.
        const double share =
            edges_per_epoch > 0
                ? static_cast<double>(isolated.size()) / edges_per_epoch
                : 1.0;
        for (int r = 0; r < config.node_batches_per_step; ++r) {
          const std::vector<int> nodes = node_sampler->NextBatch();
          part.assign(gradient.size(), 0.0);
          const double scale =
              share / (static_cast<double>(nodes.size()) * config.node_batches_per_step);
          const double value = NodeBatchLoss(history.params, features, labels,
                                             nodes, config, &part);
          if (!std::isfinite(value)) {
            Fail(ErrorCode::kNumericFault,
                 "non-finite node-batch loss at epoch " + std::to_string(epoch) +
                     " step " + std::to_string(step));
          }
          loss += scale * value;
          for (std::size_t i = 0; i < gradient.size(); ++i) gradient[i] += scale * part[i];
        }
      }
      try {
        optimizer.Step(history.params, gradient);
      } catch (const Error& e) {
        Fail(e.code(), std::string(e.what()) + " (epoch " + std::to_string(epoch) +
                           " step " + std::to_string(step) + ")");
      }
    }

    EpochRecord record;
    record.epoch = epoch;
    record.steps = steps;
    record.objective =
        FullObjective(history.params, graph, partition, features, labels, config);
    if (!std::isfinite(record.objective.total)) {
      Fail(ErrorCode::kNumericFault,
           "objective became non-finite after epoch " + std::to_string(epoch));
    }
    if (eval_labels != nullptr) {
      record.eval = EvaluateModel(history.params, features, *eval_labels,
                                  config.supervised);
    }
    history.epochs.push_back(record);
  }
  return history;
}

TrainHistory SelfTrain(const Graph& graph, const NodeFeatures& features,
                       const NodeLabels& seed_labels, const NgmConfig& config,
                       int rounds, const NodeLabels* eval_labels) {
  if (rounds < 1) Fail(ErrorCode::kInvalidConfig, "self-training needs >= 1 round");
  NodeLabels current = seed_labels;
  std::vector<RoundRecord> records;
  TrainHistory history;
  for (int round = 0; round < rounds; ++round) {
    history = Train(graph, features, current, config, eval_labels);
    RoundRecord record;
    record.round = round;
    record.labeled = current.CountLabeled();
    if (!history.epochs.empty()) record.eval = history.epochs.back().eval;
    if (round + 1 < rounds) {
      std::vector<int> frontier;
      for (int v = 0; v < graph.num_nodes(); ++v) {
        if (current.IsLabeled(v)) continue;
        for (const Neighbor& nb : graph.neighbors(v)) {
          if (current.IsLabeled(nb.node)) {
            frontier.push_back(v);
            break;
          }
        }
      }
      if (!frontier.empty()) {
        const Predictions predictions =
            Predict(history.params, features, config.supervised);
        const auto sets = PredictedSets(predictions, config.supervised);
        for (int v : frontier) current.Set(v, sets[v]);
      }
      record.added = static_cast<int>(frontier.size());
    }
    records.push_back(record);
    if (round + 1 < rounds && record.added == 0) break;
  }
  history.rounds = std::move(records);
  history.final_labels = current;
  return history;
}

std::string TrainHistoryToJson(const TrainHistory& history, int indent) {
  nlohmann::ordered_json j;
  j["loss_normalization"] = "edge-batch mean";
  j["edges_per_epoch"] = history.edges_per_epoch;
  j["isolated_labeled_nodes"] = history.isolated_labeled;
  nlohmann::ordered_json epochs = nlohmann::ordered_json::array();
  for (const EpochRecord& r : history.epochs) {
    nlohmann::ordered_json e;
    e["epoch"] = r.epoch;
    e["steps"] = r.steps;
    e["objective"] = r.objective.total;
    e["supervised"] = r.objective.supervised;
    e["reg_ll"] = r.objective.reg_ll;
    e["reg_lu"] = r.objective.reg_lu;
    e["reg_uu"] = r.objective.reg_uu;
    if (r.eval) e["eval"] = MetricsJson(*r.eval);
    epochs.push_back(std::move(e));
  }
  j["epochs"] = std::move(epochs);
  if (!history.rounds.empty()) {
    nlohmann::ordered_json rounds = nlohmann::ordered_json::array();
    for (const RoundRecord& r : history.rounds) {
      nlohmann::ordered_json e;
      e["round"] = r.round;
      e["labeled"] = r.labeled;
      e["added"] = r.added;
      if (r.eval) e["eval"] = MetricsJson(*r.eval);
      rounds.push_back(std::move(e));
    }
    j["rounds"] = std::move(rounds);
  }
  return j.dump(indent);
}

}  // namespace ngm
