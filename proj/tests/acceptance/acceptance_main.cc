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

// Acceptance run: one PASS/FAIL line per criterion. Criterion 9 needs a
// citation dataset directory (--pubmed DIR) and is skipped otherwise.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "ngm/error.h"
#include "ngm/graph.h"
#include "ngm/graph_io.h"
#include "ngm/labelprop.h"
#include "ngm/metrics.h"
#include "ngm/nn.h"
#include "ngm/samplers.h"
#include "ngm/sbm.h"
#include "ngm/trainer.h"
#include "oracles/instances.h"
#include "oracles/oracles.h"
#include "oracles/supervised_loop.h"

namespace ngm {
namespace {

// Pinned tolerances.
constexpr double kFdEpsilon = 1e-5;
constexpr double kGradientTolerance = 1e-5;
constexpr double kGradientFloor = 1e-6;
constexpr double kObjectiveTolerance = 1e-10;
constexpr double kTrajectoryTolerance = 1e-12;
constexpr double kLpTolerance = 1e-6;
constexpr double kSimplexTolerance = 1e-9;
constexpr double kMetricTolerance = 1e-12;
constexpr double kMinMeanGain = 0.03;
constexpr int kMinWins = 8;
constexpr double kMaxBenefitSeconds = 300.0;
constexpr double kSelfTrainSlack = 0.01;
constexpr double kPubmedMinAccuracy = 0.72;
constexpr double kPubmedMinGain = 0.02;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string Format(const char* fmt, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, fmt, args...);
  return buf;
}

Outcome GradientCheck() {
  std::mt19937_64 rng(101);
  double worst = 0.0;
  int checked = 0;
  std::set<EdgeType> types;
  std::set<std::pair<int, int>> combos;
  while (checked < 200) {
    oracle::NgmInstance in = oracle::RandomNgmInstance(rng);
    if (in.graph.num_edges() == 0) continue;
    NgmConfig& c = in.config;
    c.metric = static_cast<DistanceMetric>(checked % 3);
    c.representation = c.metric == DistanceMetric::kCrossEntropy || (checked / 3) % 2
                           ? Representation::kLogits
                           : Representation::kLastHidden;
    combos.insert({static_cast<int>(c.metric), static_cast<int>(c.representation)});
    const EdgeBatch batch = oracle::RandomBatch(in, rng);
    types.insert(batch.types.begin(), batch.types.end());
    std::vector<double> grad;
    EdgeBatchLoss(in.params, in.graph, in.features, in.labels, batch, c, &grad);
    const auto fd = FiniteDiffGradient(
        in.params,
        [&](const ModelParams& q) {
          return EdgeBatchLoss(q, in.graph, in.features, in.labels, batch, c, nullptr);
        },
        kFdEpsilon);
    worst = std::max(worst, oracle::NormwiseRelError(grad, fd, kGradientFloor));
    ++checked;
  }
  const bool covered = types.size() == 3 && combos.size() == 5;
  return {covered && worst < kGradientTolerance,
          Format("%d batches, max relative error %.3g, %zu edge types, %zu metric/layer pairs",
                 checked, worst, types.size(), combos.size())};
}

Outcome ObjectiveEquivalence() {
  std::mt19937_64 rng(102);
  double worst = 0.0;
  int with_isolated = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const oracle::NgmInstance in = oracle::RandomNgmInstance(rng);
    with_isolated += !IsolatedLabeledNodes(in.graph, in.labels).empty();
    const EdgePartition p = PartitionEdges(in.graph, in.labels.labeled_mask());
    const auto& c = in.config;
    const double full = static_cast<double>(oracle::FullObjective(
        in.params, in.graph.edges(), in.features.ToDense(), in.labels, c.supervised, c.metric,
        c.symmetric_distance, c.representation, {c.alpha_ll, c.alpha_lu, c.alpha_uu}));
    EdgeBatchSampler sampler(in.graph, p, 1 + trial % 4, c.sampler, trial);
    const double dec = EdgeDecomposedObjective(in.params, in.graph, in.features, in.labels,
                                               sampler.NextEpoch(), c);
    worst = std::max(worst, std::fabs(full - dec) / (1.0 + std::fabs(full)));
  }
  return {with_isolated > 0 && worst < kObjectiveTolerance,
          Format("100 instances (%d with isolated labeled nodes), max relative difference %.3g",
                 with_isolated, worst)};
}

struct Split {
  NodeLabels train;
  NodeLabels test;
};

// Per block, a seeded shuffle reveals the first `per_block` members.
Split RevealPerBlock(const SbmConfig& sc, const SbmDataset& d, int per_block,
                     std::uint64_t seed) {
  const int n = d.graph.num_nodes();
  Split s{NodeLabels(n, sc.blocks), NodeLabels(n, sc.blocks)};
  std::mt19937_64 rng(DeriveSeed(seed, 3));
  for (int b = 0; b < sc.blocks; ++b) {
    std::vector<int> members(sc.nodes_per_block);
    std::iota(members.begin(), members.end(), b * sc.nodes_per_block);
    std::shuffle(members.begin(), members.end(), rng);
    for (int i = 0; i < sc.nodes_per_block; ++i) {
      (i < per_block ? s.train : s.test).Set(members[i], b);
    }
  }
  return s;
}

Outcome SupervisedReduction() {
  std::mt19937_64 rng(103);
  int bitwise = 0;
  for (int trial = 0; trial < 100; ++trial) {
    oracle::NgmInstance in = oracle::RandomNgmInstance(rng);
    in.config.alpha_ll = in.config.alpha_lu = in.config.alpha_uu = 0.0;
    const EdgePartition p = PartitionEdges(in.graph, in.labels.labeled_mask());
    bitwise += FullObjective(in.params, in.graph, p, in.features, in.labels, in.config).total ==
               SupervisedCost(in.params, in.features, in.labels, in.config);
  }
  double worst = 0.0;
  SbmConfig sc;
  sc.nodes_per_block = 15;
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const SbmDataset d = SbmGenerate(sc, seed);
    const Split s = RevealPerBlock(sc, d, 3, seed);
    NgmConfig c;
    c.hidden_dims = {6};
    c.alpha_ll = c.alpha_lu = c.alpha_uu = 0.0;
    c.epochs = 5;
    c.batch_size = 4;
    c.momentum = 0.5;
    c.sampler = seed % 2 ? SamplerMode::kNeighborhood : SamplerMode::kUniformShuffle;
    c.seed = seed;
    const TrainHistory h = Train(d.graph, d.features, s.train, c);
    const auto ref = oracle::SupervisedOnlyTrajectory(d.graph, d.features, s.train, c);
    for (std::size_t e = 0; e < ref.size(); ++e) {
      const double a = h.epochs[e].objective.total;
      const double b = SupervisedCost(ref[e], d.features, s.train, c);
      worst = std::max(worst, std::fabs(a - b) / std::fabs(b));
    }
    worst = std::max(worst, oracle::NormwiseRelError(h.params.values(), ref.back().values(), 1.0));
  }
  return {bitwise == 100 && worst < kTrajectoryTolerance,
          Format("%d/100 objectives bitwise equal, trajectory max relative deviation %.3g",
                 bitwise, worst)};
}

Outcome LabelPropagationOracle() {
  std::mt19937_64 rng(104);
  double worst = 0.0;
  double worst_simplex = 0.0;
  bool negative = false;
  int converged = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const oracle::LpInstance in = oracle::RandomLpInstance(rng, 10, 4);
    const PropagationResult r = JacobiPropagate(
        in.graph, in.seeds, in.prior, in.config, [&](int, const Matrix& y) {
          for (int v = 0; v < y.rows(); ++v) {
            double sum = 0.0;
            for (double p : y.row(v)) {
              negative |= p < 0.0;
              sum += p;
            }
            worst_simplex = std::max(worst_simplex, std::fabs(sum - 1.0));
          }
        });
    converged += r.converged;
    const Matrix direct = DirectSolve(in.graph, in.seeds, in.prior, in.config);
    for (int v = 0; v < direct.rows(); ++v) {
      for (int k = 0; k < direct.cols(); ++k) {
        worst = std::max(worst, std::fabs(r.distribution(v, k) - direct(v, k)));
      }
    }
  }
  return {converged == 100 && !negative && worst < kLpTolerance &&
              worst_simplex <= kSimplexTolerance,
          Format("%d/100 converged, max entry gap %.3g, max simplex deviation %.3g", converged,
                 worst, worst_simplex)};
}

Outcome PathGraphFeatures() {
  Graph g(3);
  g.AddEdge(0, 1);
  g.AddEdge(1, 2);
  const Matrix got = AdjacencyFeatures(g).ToDense();
  const double want[3][3] = {{1, 1, 0}, {1, 1, 1}, {0, 1, 1}};
  bool same = got.rows() == 3 && got.cols() == 3;
  for (int r = 0; same && r < 3; ++r) {
    for (int c = 0; c < 3; ++c) same &= got(r, c) == want[r][c];
  }
  return {same, "rows [1,1,0] [1,1,1] [0,1,1]"};
}

// Shared training protocol for the SBM experiments.
NgmConfig SbmTrainingConfig(double alpha, std::uint64_t seed) {
  NgmConfig c;
  c.hidden_dims = {32, 16};
  c.activation = Activation::kTanh;
  c.alpha_ll = c.alpha_lu = c.alpha_uu = alpha;
  c.metric = DistanceMetric::kSquaredL2;
  c.representation = Representation::kLastHidden;
  c.learning_rate = 0.03;
  c.momentum = 0.9;
  c.batch_size = 32;
  c.epochs = 300;
  c.seed = seed;
  return c;
}

double FinalAccuracy(const TrainHistory& h) { return h.epochs.back().eval->accuracy; }

Outcome SemiSupervisedBenefit() {
  const auto start = std::chrono::steady_clock::now();
  const SbmConfig sc;
  double gain = 0.0, ngm_mean = 0.0, base_mean = 0.0;
  int wins = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const SbmDataset d = SbmGenerate(sc, seed);
    const NodeFeatures x = AdjacencyFeatures(d.graph);
    const Split s = RevealPerBlock(sc, d, 5, seed);
    const double ngm =
        FinalAccuracy(Train(d.graph, x, s.train, SbmTrainingConfig(0.2, seed), &s.test));
    const double base =
        FinalAccuracy(Train(d.graph, x, s.train, SbmTrainingConfig(0.0, seed), &s.test));
    std::printf("  seed %2d  ngm %.4f  baseline %.4f\n", static_cast<int>(seed), ngm, base);
    ngm_mean += ngm / 10;
    base_mean += base / 10;
    gain += (ngm - base) / 10;
    wins += ngm > base;
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {gain >= kMinMeanGain && wins >= kMinWins && seconds < kMaxBenefitSeconds,
          Format("ngm %.4f baseline %.4f, mean gain %.4f (need %.2f), wins %d/10 (need %d), "
                 "%.0fs",
                 ngm_mean, base_mean, gain, kMinMeanGain, wins, kMinWins, seconds)};
}

Outcome SelfTrainingGrowth() {
  const SbmConfig sc;
  bool growing = true, seeds_kept = true;
  double single = 0.0, final = 0.0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const SbmDataset d = SbmGenerate(sc, seed);
    const NodeFeatures x = AdjacencyFeatures(d.graph);
    const Split s = RevealPerBlock(sc, d, 2, seed);
    const TrainHistory h =
        SelfTrain(d.graph, x, s.train, SbmTrainingConfig(0.2, seed), 3, &s.test);
    for (std::size_t r = 1; r < h.rounds.size(); ++r) {
      growing &= h.rounds[r].labeled > h.rounds[r - 1].labeled;
    }
    if (h.rounds.size() < 3) growing &= h.rounds.back().added == 0;
    for (int v : s.train.LabeledNodes()) {
      seeds_kept &= h.final_labels.classes(v) == s.train.classes(v);
    }
    single += h.rounds.front().eval->accuracy / 10;
    final += h.rounds.back().eval->accuracy / 10;
    std::printf("  seed %2d  labeled", static_cast<int>(seed));
    for (const RoundRecord& r : h.rounds) std::printf(" %d", r.labeled);
    std::printf("  accuracy %.4f -> %.4f\n", h.rounds.front().eval->accuracy,
                h.rounds.back().eval->accuracy);
  }
  return {growing && seeds_kept && final >= single - kSelfTrainSlack,
          Format("growth %s, seeds %s, mean accuracy single round %.4f final %.4f",
                 growing ? "strict" : "violated", seeds_kept ? "kept" : "changed", single, final)};
}

Outcome MetricOracles() {
  std::mt19937_64 rng(108);
  double worst_f1 = 0.0, worst_mrr = 0.0, worst_acc = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 30);
    const int l = 1 + static_cast<int>(rng() % 6);
    const bool multi = trial % 2;
    std::vector<std::vector<int>> pred(n), truth(n);
    for (int i = 0; i < n; ++i) {
      for (auto* sets : {&pred, &truth}) {
        if (multi) {
          for (int k = 0; k < l; ++k) {
            if (rng() % 3 == 0) (*sets)[i].push_back(k);
          }
        } else {
          (*sets)[i].push_back(static_cast<int>(rng() % l));
        }
      }
    }
    const F1Report got = F1Scores(pred, truth, l);
    const oracle::F1 want = oracle::ConfusionF1(pred, truth, l);
    worst_f1 = std::max({worst_f1, std::fabs(got.macro - static_cast<double>(want.macro)),
                         std::fabs(got.micro - static_cast<double>(want.micro))});
  }
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 30);
    const int l = 1 + static_cast<int>(rng() % 6);
    Matrix scores(n, l);
    std::vector<int> truth(n);
    long double want = 0;
    for (int i = 0; i < n; ++i) {
      // Coarse integer scores make ties common.
      for (int k = 0; k < l; ++k) scores(i, k) = static_cast<double>(rng() % 4);
      truth[i] = static_cast<int>(rng() % l);
      want += 1.0L / oracle::SortRank(scores.row(i), truth[i]);
    }
    worst_mrr = std::max(worst_mrr, std::fabs(Mrr(scores, truth) - static_cast<double>(want / n)));
  }
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 30);
    const int l = 1 + static_cast<int>(rng() % 6);
    std::vector<int> pred(n), truth(n);
    int hits = 0;
    for (int i = 0; i < n; ++i) {
      pred[i] = static_cast<int>(rng() % l);
      truth[i] = static_cast<int>(rng() % l);
      hits += pred[i] == truth[i];
    }
    worst_acc = std::max(worst_acc, std::fabs(Accuracy(pred, truth) - double(hits) / n));
  }
  const Matrix top = Matrix::FromRows({{3, 1, 0}, {0, 5, 2}});
  const Matrix second = Matrix::FromRows({{1, 2}, {4, 3}});
  const std::vector<int> top_truth{0, 1}, second_truth{0, 1};
  const bool edges = Mrr(top, top_truth) == 1.0 && Mrr(second, second_truth) == 0.5;
  return {edges && worst_f1 < kMetricTolerance && worst_mrr < kMetricTolerance &&
              worst_acc < kMetricTolerance,
          Format("3x1000 cases, max gaps f1 %.3g mrr %.3g accuracy %.3g, edge values %s",
                 worst_f1, worst_mrr, worst_acc, edges ? "exact" : "wrong")};
}

// Expects edges.tsv, features.tsv, seeds.tsv (the 60 revealed labels) and
// test.tsv under `dir`. Test nodes are removed from the graph.
Outcome CitationReproduction(const std::filesystem::path& dir) {
  auto open = [&](const char* name) {
    std::ifstream in(dir / name);
    if (!in) Fail(ErrorCode::kData, (dir / name).string() + ": cannot open");
    return in;
  };
  std::ifstream edges = open("edges.tsv");
  std::ifstream features = open("features.tsv");
  std::ifstream seeds = open("seeds.tsv");
  std::ifstream test = open("test.tsv");
  const NodeFeatures x = ReadFeatures(features);
  const int n = x.rows();
  const Graph full = ReadGraph(edges, n);
  const NodeLabels seed_labels = ReadLabels(seeds, n);
  const NodeLabels test_labels = ReadLabels(test, n, seed_labels.num_classes());
  const Graph graph = WithoutNodes(full, test_labels.labeled_mask());

  auto config = [](double alpha) {
    NgmConfig c;
    c.hidden_dims = {250, 100};
    c.alpha_ll = c.alpha_lu = c.alpha_uu = alpha;
    c.metric = DistanceMetric::kSquaredL2;
    c.representation = Representation::kLastHidden;
    c.learning_rate = 0.03;
    c.momentum = 0.9;
    c.batch_size = 128;
    c.epochs = 10;
    return c;
  };
  const TrainHistory ngm = SelfTrain(graph, x, seed_labels, config(0.2), 3, &test_labels);
  const TrainHistory base = Train(graph, x, seed_labels, config(0.0), &test_labels);
  const double a = FinalAccuracy(ngm);
  const double b = FinalAccuracy(base);
  return {a >= kPubmedMinAccuracy && a - b >= kPubmedMinGain,
          Format("ngm %.4f baseline %.4f", a, b)};
}

}  // namespace
}  // namespace ngm

int main(int argc, char** argv) {
  using ngm::Outcome;
  std::string pubmed;
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--pubmed") pubmed = argv[i + 1];
  }
  const std::vector<std::function<Outcome()>> criteria = {
      ngm::GradientCheck,          ngm::ObjectiveEquivalence, ngm::SupervisedReduction,
      ngm::LabelPropagationOracle, ngm::PathGraphFeatures,    ngm::SemiSupervisedBenefit,
      ngm::SelfTrainingGrowth,     ngm::MetricOracles,
  };
  int failed = 0;
  auto report = [&](int id, const std::function<Outcome()>& run) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %d %s  %s  [%.1fs]\n", id, o.pass ? "PASS" : "FAIL", o.detail.c_str(),
                s);
    std::fflush(stdout);
    return o.pass;
  };
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    failed += !report(static_cast<int>(i) + 1, criteria[i]);
  }
  if (pubmed.empty()) {
    std::printf("criterion 9 SKIP  optional, pass --pubmed DIR to run\n");
  } else {
    report(9, [&] { return ngm::CitationReproduction(pubmed); });
  }
  return failed == 0 ? 0 : 1;
}
