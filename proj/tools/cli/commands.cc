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

#include "cli/commands.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "ngm/graph.h"
#include "ngm/graph_io.h"
#include "ngm/labelprop.h"
#include "ngm/metrics.h"
#include "ngm/model_io.h"
#include "ngm/nn.h"
#include "ngm/samplers.h"
#include "ngm/sbm.h"
#include "ngm/trainer.h"

namespace ngm::cli {
namespace {

using Json = nlohmann::ordered_json;

std::ifstream OpenIn(const std::string& path) {
  std::ifstream in(path);
  if (!in) Fail(ErrorCode::kData, "cannot open " + path);
  return in;
}

std::ofstream OpenOut(const std::string& path) {
  std::ofstream out(path);
  if (!out) Fail(ErrorCode::kData, "cannot write " + path);
  return out;
}

template <typename Writer>
void WriteFile(const std::string& path, Writer&& write) {
  std::ofstream out = OpenOut(path);
  write(out);
  out.flush();
  if (!out) Fail(ErrorCode::kData, "error while writing " + path);
}

void WriteJson(const std::string& path, const Json& j, std::ostream& fallback) {
  if (path.empty()) {
    fallback << j.dump(2) << "\n";
    return;
  }
  WriteFile(path, [&](std::ostream& o) { o << j.dump(2) << "\n"; });
}

// Largest node id in the first column of a TSV file, plus one. Malformed lines
// are left for the real reader to report.
int InferNodeCount(const std::string& path) {
  std::ifstream in = OpenIn(path);
  std::string line;
  int count = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto end = line.find_first_of("\t \r");
    const std::string_view head(line.data(),
                                end == std::string::npos ? line.size() : end);
    int id = 0;
    const auto [ptr, ec] = std::from_chars(head.data(), head.data() + head.size(), id);
    if (ec == std::errc() && ptr == head.data() + head.size() && id >= 0) {
      count = std::max(count, id + 1);
    }
  }
  return count;
}

std::vector<Edge> LoadEdges(const std::string& path) {
  std::ifstream in = OpenIn(path);
  return ReadEdgeList(in, path);
}

int MaxEdgeNode(const std::vector<Edge>& edges) {
  int count = 0;
  for (const Edge& e : edges) count = std::max({count, e.u + 1, e.v + 1});
  return count;
}

NodeLabels LoadLabels(const std::string& path, int num_nodes, int num_classes = -1) {
  std::ifstream in = OpenIn(path);
  return ReadLabels(in, num_nodes, num_classes, path);
}

NodeFeatures LoadFeatures(const std::string& path, int num_nodes) {
  std::ifstream in = OpenIn(path);
  return ReadFeatures(in, num_nodes, -1, path);
}

NodeLabels Widen(const NodeLabels& labels, int num_classes) {
  NodeLabels out(labels.num_nodes(), num_classes);
  for (int v : labels.LabeledNodes()) out.Set(v, labels.classes(v));
  return out;
}

std::string JoinIds(const std::vector<int>& ids) {
  std::string s;
  const std::size_t shown = std::min<std::size_t>(ids.size(), 20);
  for (std::size_t i = 0; i < shown; ++i) {
    if (i > 0) s += ", ";
    s += std::to_string(ids[i]);
  }
  if (shown < ids.size()) s += ", ... (" + std::to_string(ids.size()) + " total)";
  return s;
}

SamplerMode ParseSampler(const std::string& name) {
  if (name == "uniform") return SamplerMode::kUniformShuffle;
  if (name == "neighborhood") return SamplerMode::kNeighborhood;
  Fail(ErrorCode::kInvalidConfig, "unknown sampler '" + name + "'");
}

// --- build-graph ----------------------------------------------------------

int RunBuildGraph(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const bool from_edges = c.Has("edges");
  if (from_edges == c.Has("embeddings")) {
    Fail(ErrorCode::kInvalidConfig, "build-graph needs exactly one of --edges or --embeddings");
  }
  const std::string& out_path = c.Require("out");
  const int requested = c.GetInt("num_nodes");

  Graph graph;
  if (from_edges) {
    const std::vector<Edge> edges = LoadEdges(c.Get("edges"));
    const int n = requested >= 0 ? requested : MaxEdgeNode(edges);
    graph = LoadGraph(n, edges);
  } else {
    const int n = requested >= 0 ? requested : InferNodeCount(c.Get("embeddings"));
    const NodeFeatures embeddings = LoadFeatures(c.Get("embeddings"), n);
    graph = KnnGraph(embeddings.ToDense(), c.GetInt("k"), c.GetDouble("threshold"));
  }

  WriteFile(out_path, [&](std::ostream& o) { WriteEdgeList(o, graph); });
  if (c.Has("features_out")) {
    const std::string& fmt = c.Get("features_format");
    FeatureFormat format;
    if (fmt == "sparse") {
      format = FeatureFormat::kSparse;
    } else if (fmt == "dense") {
      format = FeatureFormat::kDense;
    } else {
      Fail(ErrorCode::kInvalidConfig, "unknown features_format '" + fmt + "'");
    }
    const NodeFeatures features = AdjacencyFeatures(graph);
    WriteFile(c.Get("features_out"),
              [&](std::ostream& o) { WriteFeatures(o, features, format); });
  }

  if (graph.num_edges() == 0) err << "warning: graph has no edges\n";
  int min_degree = 0;
  int max_degree = 0;
  double mean_degree = 0.0;
  if (graph.num_nodes() > 0) {
    min_degree = graph.incident_count(0);
    for (int v = 0; v < graph.num_nodes(); ++v) {
      min_degree = std::min(min_degree, graph.incident_count(v));
      max_degree = std::max(max_degree, graph.incident_count(v));
    }
    mean_degree = 2.0 * graph.num_edges() / graph.num_nodes();
  }
  out << "nodes " << graph.num_nodes() << "\n"
      << "edges " << graph.num_edges() << "\n"
      << "degree min " << min_degree << " mean " << FormatDouble(mean_degree)
      << " max " << max_degree << "\n";
  return kExitOk;
}

// --- propagate ------------------------------------------------------------

int RunPropagate(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const std::vector<Edge> edges = LoadEdges(c.Require("edges"));
  const std::string& labels_path = c.Require("labels");
  int n = c.GetInt("num_nodes");
  if (n < 0) n = std::max(MaxEdgeNode(edges), InferNodeCount(labels_path));
  const Graph graph = LoadGraph(n, edges);
  const int requested_labels = c.GetInt("num_labels");
  const NodeLabels labels = LoadLabels(labels_path, n, requested_labels);
  if (labels.IsMultiLabel()) {
    err << "note: multi-label nodes seed a uniform distribution over their labels\n";
  }

  LPConfig lp;
  lp.mu1 = c.GetDouble("mu1");
  lp.mu2 = c.GetDouble("mu2");
  lp.mu3 = c.GetDouble("mu3");
  lp.max_iter = c.GetInt("max_iter");
  lp.tol = c.GetDouble("tol");
  lp.Validate();

  const Seeds seeds = SeedsFromLabels(labels);
  const std::vector<double> prior = UniformPrior(labels.num_classes());
  const PropagationResult result = JacobiPropagate(graph, seeds, prior, lp);

  if (c.Has("distributions")) {
    WriteFile(c.Get("distributions"),
              [&](std::ostream& o) { WriteDenseRows(o, result.distribution); });
  }
  if (c.Has("predictions")) {
    const std::vector<int> argmax = LpPredict(result.distribution);
    NodeLabels predicted(n, labels.num_classes());
    for (int v = 0; v < n; ++v) predicted.Set(v, argmax[v]);
    WriteFile(c.Get("predictions"), [&](std::ostream& o) { WriteLabels(o, predicted); });
  }

  Json report;
  report["command"] = c.command();
  report["config"] = c.ToJson();
  report["num_nodes"] = graph.num_nodes();
  report["num_edges"] = graph.num_edges();
  report["num_labels"] = labels.num_classes();
  report["num_seeds"] = static_cast<int>(seeds.nodes.size());
  report["iterations"] = result.iterations;
  report["converged"] = result.converged;
  report["last_change"] = result.last_change;
  report["stuck_nodes"] = result.stuck_nodes;
  report["objective"] = LpObjective(result.distribution, graph, seeds, prior, lp);
  WriteJson(c.Get("report"), report, out);

  if (!result.converged) {
    err << "error: label propagation did not converge in " << result.iterations
        << " iterations (last change " << FormatDouble(result.last_change) << ")\n";
    return kExitNotConverged;
  }
  return kExitOk;
}

// --- train / self-train ---------------------------------------------------

struct TrainingData {
  Graph graph;
  NodeFeatures features;
  NodeLabels labels;
  std::optional<NodeLabels> eval;
  std::string mode;
};

TrainingData LoadTrainingData(const RunConfig& c) {
  TrainingData d;
  const std::vector<Edge> edges = LoadEdges(c.Require("edges"));
  const std::string& labels_path = c.Require("labels");
  const std::string& features_path = c.Require("features");
  const bool adjacency = features_path == "adjacency";
  const std::string& eval_path = c.Get("eval_labels");

  int n = c.GetInt("num_nodes");
  if (n < 0) {
    n = std::max(MaxEdgeNode(edges), InferNodeCount(labels_path));
    if (!eval_path.empty()) n = std::max(n, InferNodeCount(eval_path));
    if (!adjacency) n = std::max(n, InferNodeCount(features_path));
  }
  Graph full = LoadGraph(n, edges);

  NodeLabels labels = LoadLabels(labels_path, n);
  int num_classes = std::max(labels.num_classes(), c.GetInt("num_labels"));
  if (!eval_path.empty()) {
    NodeLabels eval = LoadLabels(eval_path, n);
    num_classes = std::max(num_classes, eval.num_classes());
    std::vector<int> overlap;
    for (int v : eval.LabeledNodes()) {
      if (labels.IsLabeled(v)) overlap.push_back(v);
    }
    if (!overlap.empty()) {
      Fail(ErrorCode::kData, "nodes labeled in both training and evaluation files: " +
                                 JoinIds(overlap));
    }
    d.eval = Widen(eval, num_classes);
  }
  d.labels = Widen(labels, num_classes);

  d.mode = c.Get("mode");
  if (d.mode == "transductive") {
    d.graph = std::move(full);
  } else if (d.mode == "inductive") {
    if (!d.eval) {
      Fail(ErrorCode::kInvalidConfig, "inductive mode needs --eval_labels");
    }
    d.graph = WithoutNodes(full, d.eval->labeled_mask());
  } else {
    Fail(ErrorCode::kInvalidConfig, "unknown mode '" + d.mode + "'");
  }

  d.features = adjacency ? AdjacencyFeatures(d.graph) : LoadFeatures(features_path, n);
  return d;
}

NgmConfig NgmConfigFrom(const RunConfig& c, bool multi_label) {
  NgmConfig n;
  n.hidden_dims = c.GetIntList("hidden");
  n.activation = ParseActivation(c.Get("activation"));
  n.alpha_ll = c.GetDouble("alpha_ll");
  n.alpha_lu = c.GetDouble("alpha_lu");
  n.alpha_uu = c.GetDouble("alpha_uu");
  n.metric = ParseDistanceMetric(c.Get("metric"));
  n.symmetric_distance = c.GetBool("symmetric_distance");
  n.representation = ParseRepresentation(c.Get("representation"));
  const std::string& loss = c.Get("loss");
  if (loss == "auto") {
    n.supervised = multi_label ? SupervisedKind::kSigmoidCrossEntropy
                               : SupervisedKind::kSoftmaxCrossEntropy;
  } else {
    n.supervised = ParseSupervisedKind(loss);
  }
  n.learning_rate = c.GetDouble("learning_rate");
  n.momentum = c.GetDouble("momentum");
  n.batch_size = c.GetInt("batch_size");
  n.node_batch_size = c.GetInt("node_batch_size");
  n.node_batches_per_step = c.GetInt("node_batches_per_step");
  n.epochs = c.GetInt("epochs");
  n.sampler = ParseSampler(c.Get("sampler"));
  n.drop_uu = c.GetBool("drop_uu");
  n.seed = c.GetUint64("seed");
  n.Validate();
  return n;
}

int RunTraining(const RunConfig& c, std::ostream& out, bool self_train) {
  const TrainingData d = LoadTrainingData(c);
  const bool multi_label = d.labels.IsMultiLabel() || (d.eval && d.eval->IsMultiLabel());
  const NgmConfig config = NgmConfigFrom(c, multi_label);
  const NodeLabels* eval = d.eval ? &*d.eval : nullptr;

  const TrainHistory history =
      self_train ? SelfTrain(d.graph, d.features, d.labels, config, c.GetInt("rounds"), eval)
                 : Train(d.graph, d.features, d.labels, config, eval);

  if (c.Has("model")) {
    WriteFile(c.Get("model"),
              [&](std::ostream& o) { WriteModel(o, history.params, config.supervised); });
  }
  if (c.Has("predictions")) {
    const Predictions p = Predict(history.params, d.features, config.supervised);
    WriteFile(c.Get("predictions"),
              [&](std::ostream& o) { WriteDenseRows(o, p.probabilities); });
  }
  if (self_train && c.Has("labels_out")) {
    WriteFile(c.Get("labels_out"),
              [&](std::ostream& o) { WriteLabels(o, history.final_labels); });
  }

  Json report;
  report["command"] = c.command();
  report["config"] = c.ToJson();
  report["seed"] = config.seed;
  report["mode"] = d.mode;
  report["loss"] = SupervisedKindName(config.supervised);
  report["num_nodes"] = d.graph.num_nodes();
  report["num_edges"] = d.graph.num_edges();
  report["num_classes"] = d.labels.num_classes();
  report["num_labeled"] = d.labels.CountLabeled();
  report["history"] = Json::parse(TrainHistoryToJson(history));
  WriteJson(c.Get("history"), report, out);

  if (c.Has("history") && !history.epochs.empty()) {
    const EpochRecord& last = history.epochs.back();
    out << "epochs " << history.epochs.size() << " objective "
        << FormatDouble(last.objective.total);
    if (last.eval) out << " accuracy " << FormatDouble(last.eval->accuracy);
    out << "\n";
  }
  return kExitOk;
}

int RunTrain(const RunConfig& c, std::ostream& out, std::ostream&) {
  return RunTraining(c, out, false);
}

int RunSelfTrain(const RunConfig& c, std::ostream& out, std::ostream&) {
  return RunTraining(c, out, true);
}

// --- evaluate -------------------------------------------------------------

EvalReport MultiLabelReport(const Matrix& scores,
                            const std::vector<std::vector<int>>& predicted,
                            const std::vector<std::vector<int>>& truth,
                            int num_classes) {
  EvalReport r;
  r.num_examples = static_cast<int>(truth.size());
  r.f1 = F1Scores(predicted, truth, num_classes);
  if (truth.empty()) return r;
  double exact = 0.0;
  double rr = 0.0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (predicted[i] == truth[i]) exact += 1.0;
    int best = 0;
    for (int t : truth[i]) {
      const int rank = TrueClassRank(scores.row(static_cast<int>(i)), t);
      if (best == 0 || rank < best) best = rank;
    }
    if (best > 0) rr += 1.0 / best;
  }
  r.accuracy = exact / truth.size();
  r.mrr = rr / truth.size();
  return r;
}

int RunEvaluate(const RunConfig& c, std::ostream& out, std::ostream&) {
  SavedModel model;
  {
    const std::string& path = c.Require("model");
    std::ifstream in = OpenIn(path);
    model = ReadModel(in, path);
  }
  const std::string& labels_path = c.Require("labels");
  const std::string& features_path = c.Require("features");
  const bool adjacency = features_path == "adjacency";

  int n = c.GetInt("num_nodes");
  std::vector<Edge> edges;
  if (adjacency) edges = LoadEdges(c.Require("edges"));
  if (n < 0) {
    n = InferNodeCount(labels_path);
    n = std::max(n, adjacency ? MaxEdgeNode(edges) : InferNodeCount(features_path));
  }
  const NodeFeatures features = adjacency ? AdjacencyFeatures(LoadGraph(n, edges))
                                          : LoadFeatures(features_path, n);
  if (features.cols() != model.params.input_dim()) {
    Fail(ErrorCode::kData, "features have " + std::to_string(features.cols()) +
                               " columns but the model expects " +
                               std::to_string(model.params.input_dim()));
  }
  const NodeLabels truth = LoadLabels(labels_path, n, model.params.output_dim());
  const std::vector<int> nodes = truth.LabeledNodes();

  const Predictions all = Predict(model.params, features, model.output);
  Matrix scores(static_cast<int>(nodes.size()), model.params.output_dim());
  Predictions subset;
  subset.probabilities = Matrix(scores.rows(), scores.cols());
  std::vector<std::vector<int>> truth_sets;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto src = all.probabilities.row(nodes[i]);
    std::copy(src.begin(), src.end(), scores.row(static_cast<int>(i)).begin());
    std::copy(src.begin(), src.end(), subset.probabilities.row(static_cast<int>(i)).begin());
    subset.labels.push_back(all.labels[nodes[i]]);
    truth_sets.push_back(truth.classes(nodes[i]));
  }

  EvalReport eval;
  if (model.output == SupervisedKind::kSigmoidCrossEntropy || truth.IsMultiLabel()) {
    eval = MultiLabelReport(scores, PredictedSets(subset, model.output), truth_sets,
                            model.params.output_dim());
  } else {
    std::vector<int> truth_ids;
    for (const auto& s : truth_sets) {
      if (s.empty()) Fail(ErrorCode::kData, "labeled node without a class");
      truth_ids.push_back(s.front());
    }
    eval = Evaluate(scores, truth_ids);
  }

  if (c.Has("predictions")) {
    WriteFile(c.Get("predictions"),
              [&](std::ostream& o) { WriteDenseRows(o, all.probabilities); });
  }

  Json report;
  report["command"] = c.command();
  report["config"] = c.ToJson();
  report["output"] = SupervisedKindName(model.output);
  report["metrics"] = Json::parse(EvalReportToJson(eval));
  WriteJson(c.Get("report"), report, out);
  if (c.Has("report")) {
    out << "examples " << eval.num_examples << " accuracy "
        << FormatDouble(eval.accuracy) << " mrr " << FormatDouble(eval.mrr)
        << " macro_f1 " << FormatDouble(eval.f1.macro) << " micro_f1 "
        << FormatDouble(eval.f1.micro) << "\n";
  }
  return kExitOk;
}

// --- sbm ------------------------------------------------------------------

int RunSbm(const RunConfig& c, std::ostream& out, std::ostream&) {
  SbmConfig config;
  config.blocks = c.GetInt("blocks");
  config.nodes_per_block = c.GetInt("nodes_per_block");
  config.p_in = c.GetDouble("p_in");
  config.p_out = c.GetDouble("p_out");
  config.feature_noise = c.GetDouble("feature_noise");
  const std::uint64_t seed = c.GetUint64("seed");
  const int per_block = c.GetInt("labeled_per_block");
  if (per_block < 0 || per_block > config.nodes_per_block) {
    Fail(ErrorCode::kInvalidConfig, "labeled_per_block must be in [0, nodes_per_block]");
  }
  const std::string& kind = c.Get("features");
  if (kind != "noisy" && kind != "adjacency") {
    Fail(ErrorCode::kInvalidConfig, "unknown features kind '" + kind + "'");
  }
  const std::string& prefix = c.Require("prefix");

  const SbmDataset data = SbmGenerate(config, seed);
  const int n = data.graph.num_nodes();
  NodeLabels all(n, config.blocks);
  for (int v = 0; v < n; ++v) all.Set(v, data.blocks[v]);

  std::mt19937_64 rng(DeriveSeed(seed, 3));
  NodeLabels train(n, config.blocks);
  NodeLabels test(n, config.blocks);
  for (int b = 0; b < config.blocks; ++b) {
    std::vector<int> members(config.nodes_per_block);
    std::iota(members.begin(), members.end(), b * config.nodes_per_block);
    std::shuffle(members.begin(), members.end(), rng);
    for (int i = 0; i < config.nodes_per_block; ++i) {
      (i < per_block ? train : test).Set(members[i], b);
    }
  }

  const NodeFeatures features =
      kind == "adjacency" ? AdjacencyFeatures(data.graph) : data.features;
  WriteFile(prefix + "edges.tsv", [&](std::ostream& o) { WriteEdgeList(o, data.graph); });
  WriteFile(prefix + "features.tsv", [&](std::ostream& o) {
    WriteFeatures(o, features,
                  kind == "adjacency" ? FeatureFormat::kSparse : FeatureFormat::kDense);
  });
  WriteFile(prefix + "labels.tsv", [&](std::ostream& o) { WriteLabels(o, all); });
  WriteFile(prefix + "train.tsv", [&](std::ostream& o) { WriteLabels(o, train); });
  WriteFile(prefix + "test.tsv", [&](std::ostream& o) { WriteLabels(o, test); });

  int within = 0;
  for (const Edge& e : data.graph.edges()) {
    if (data.blocks[e.u] == data.blocks[e.v]) ++within;
  }
  Json report;
  report["command"] = c.command();
  report["config"] = c.ToJson();
  report["seed"] = seed;
  report["num_nodes"] = n;
  report["num_edges"] = data.graph.num_edges();
  report["within_block_edges"] = within;
  report["between_block_edges"] = data.graph.num_edges() - within;
  report["num_train"] = train.CountLabeled();
  report["num_test"] = test.CountLabeled();
  WriteJson(prefix + "report.json", report, out);
  out << "nodes " << n << "\nedges " << data.graph.num_edges() << " (within "
      << within << ", between " << data.graph.num_edges() - within << ")\n";
  return kExitOk;
}

// --- key tables -----------------------------------------------------------

std::vector<KeySpec> TrainingKeys(bool self_train) {
  std::vector<KeySpec> keys = {
      {"edges", "", "edge list TSV"},
      {"features", "", "feature TSV, or 'adjacency' for adjacency rows"},
      {"labels", "", "training labels TSV"},
      {"eval_labels", "", "held-out labels scored after every epoch"},
      {"mode", "transductive", "transductive or inductive (held-out nodes leave the graph)"},
      {"num_nodes", "-1", "node count, -1 infers it from the inputs"},
      {"num_labels", "-1", "label count, -1 infers it from the label files"},
      {"hidden", "50", "comma-separated hidden layer widths"},
      {"activation", "tanh", "tanh or relu"},
      {"alpha_ll", "0.1", "weight of labeled-labeled edges"},
      {"alpha_lu", "0.1", "weight of labeled-unlabeled edges"},
      {"alpha_uu", "0.1", "weight of unlabeled-unlabeled edges"},
      {"metric", "l2", "l1, l2 (squared) or cross-entropy"},
      {"symmetric_distance", "false", "average cross-entropy over both directions"},
      {"representation", "last-hidden", "last-hidden or logits"},
      {"loss", "auto", "auto, softmax, squared-l2 or sigmoid"},
      {"learning_rate", "0.1", "SGD step size"},
      {"momentum", "0", "SGD momentum"},
      {"batch_size", "32", "edges per minibatch"},
      {"node_batch_size", "0", "isolated labeled nodes per batch, 0 uses batch_size"},
      {"node_batches_per_step", "1", "node batches per step in edge-free graphs"},
      {"epochs", "20", "passes over the edges"},
      {"sampler", "neighborhood", "neighborhood or uniform"},
      {"drop_uu", "false", "skip unlabeled-unlabeled edges"},
      {"seed", "1", "random seed"},
      {"model", "", "output model file"},
      {"history", "", "output JSON report (stdout when empty)"},
      {"predictions", "", "output per-node class probabilities"},
  };
  if (self_train) {
    keys.push_back({"rounds", "3", "self-training rounds"});
    keys.push_back({"labels_out", "", "output labels after the last round"});
  }
  return keys;
}

}  // namespace

int ExitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNumericFault:
      return kExitNumericFault;
    case ErrorCode::kNotConverged:
      return kExitNotConverged;
    default:
      return kExitDataError;
  }
}

const std::vector<Command>& Commands() {
  static const std::vector<Command> commands = {
      {"build-graph",
       "Build a graph from an edge list or a kNN over embeddings",
       {
           {"edges", "", "input edge list TSV"},
           {"embeddings", "", "input dense or sparse embedding TSV"},
           {"num_nodes", "-1", "node count, -1 infers it"},
           {"k", "10", "neighbors proposed per node"},
           {"threshold", "0", "minimum cosine similarity"},
           {"out", "", "output edge list TSV"},
           {"features_out", "", "output adjacency feature TSV"},
           {"features_format", "sparse", "sparse or dense"},
       },
       RunBuildGraph},
      {"propagate",
       "Run label propagation",
       {
           {"edges", "", "edge list TSV"},
           {"labels", "", "seed labels TSV"},
           {"num_nodes", "-1", "node count, -1 infers it"},
           {"num_labels", "-1", "label count, -1 infers it"},
           {"mu1", "1", "seed weight"},
           {"mu2", "1", "smoothness weight"},
           {"mu3", "0.01", "prior weight"},
           {"max_iter", "10000", "sweep limit"},
           {"tol", "1e-8", "stop when no entry changes more than this"},
           {"distributions", "", "output distributions TSV"},
           {"predictions", "", "output argmax labels TSV"},
           {"report", "", "output JSON report (stdout when empty)"},
       },
       RunPropagate},
      {"train", "Train a graph-regularized network", TrainingKeys(false), RunTrain},
      {"self-train", "Train with neighbor self-labeling rounds", TrainingKeys(true),
       RunSelfTrain},
      {"evaluate",
       "Score a saved model on labeled nodes",
       {
           {"model", "", "model file"},
           {"features", "", "feature TSV, or 'adjacency'"},
           {"edges", "", "edge list, needed for adjacency features"},
           {"labels", "", "labels TSV to score"},
           {"num_nodes", "-1", "node count, -1 infers it"},
           {"report", "", "output JSON report (stdout when empty)"},
           {"predictions", "", "output per-node class probabilities"},
       },
       RunEvaluate},
      {"sbm",
       "Generate a stochastic block model dataset",
       {
           {"blocks", "3", "number of blocks"},
           {"nodes_per_block", "40", "nodes per block"},
           {"p_in", "0.3", "within-block edge probability"},
           {"p_out", "0.02", "between-block edge probability"},
           {"feature_noise", "0.5", "noise scale of the noisy features"},
           {"features", "noisy", "noisy or adjacency"},
           {"labeled_per_block", "5", "training nodes per block"},
           {"seed", "1", "random seed"},
           {"prefix", "", "output path prefix"},
       },
       RunSbm},
  };
  return commands;
}

int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err) {
  const std::vector<Command>& commands = Commands();
  CLI::App app{"Graph-regularized neural network toolkit", "ngm"};
  app.require_subcommand(1);

  struct Parsed {
    std::string config_path;
    std::vector<std::pair<std::string, std::string>> values;
  };
  std::vector<Parsed> parsed(commands.size());
  std::vector<CLI::App*> subs;
  for (std::size_t i = 0; i < commands.size(); ++i) {
    CLI::App* sub = app.add_subcommand(commands[i].name, commands[i].description);
    sub->add_option("--config", parsed[i].config_path,
                    "INI file with a [" + commands[i].name + "] section, or a run report");
    for (const KeySpec& key : commands[i].keys) {
      const std::string name = key.name;
      sub->add_option_function<std::string>(
          "--" + name,
          [&parsed, i, name](const std::string& v) { parsed[i].values.emplace_back(name, v); },
          key.help + " [" + key.default_value + "]");
    }
    subs.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitDataError;
  }

  for (std::size_t i = 0; i < commands.size(); ++i) {
    if (!subs[i]->parsed()) continue;
    try {
      RunConfig config(commands[i].name, commands[i].keys);
      if (!parsed[i].config_path.empty()) config.MergeFile(parsed[i].config_path);
      for (const auto& [key, value] : parsed[i].values) config.Set(key, value);
      return commands[i].run(config, out, err);
    } catch (const Error& e) {
      err << e.what() << "\n";
      return ExitCodeFor(e.code());
    } catch (const std::exception& e) {
      err << "error: " << e.what() << "\n";
      return kExitDataError;
    }
  }
  return kExitDataError;
}

}  // namespace ngm::cli
