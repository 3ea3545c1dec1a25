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

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>
#include <vector>

#include "ngm/graph.h"
#include "oracles/oracles.h"
#include "test_util.h"

namespace ngm {
namespace {

using testing::ExpectError;

TEST(Graph, IncidentCountsOfPath) {
  const std::vector<Edge> edges{{0, 1, 1.0}, {1, 2, 1.0}};
  const Graph g = LoadGraph(3, edges);
  EXPECT_EQ(g.incident_count(0), 1);
  EXPECT_EQ(g.incident_count(1), 2);
  EXPECT_EQ(g.incident_count(2), 1);
  EXPECT_TRUE(g.HasEdge(2, 1));
  EXPECT_FALSE(g.HasEdge(0, 2));
}

TEST(Graph, ValidationErrors) {
  Graph g(3);
  ExpectError(ErrorCode::kValidation, [&] { g.AddEdge(2, 2); });
  ExpectError(ErrorCode::kValidation, [&] { g.AddEdge(0, 3); });
  ExpectError(ErrorCode::kValidation, [&] { g.AddEdge(-1, 0); });
  ExpectError(ErrorCode::kValidation, [&] { g.AddEdge(0, 1, -0.5); });
  ExpectError(ErrorCode::kValidation, [&] { g.AddEdge(0, 1, NAN); });
  g.AddEdge(0, 1);
  ExpectError(ErrorCode::kValidation, [&] { g.AddEdge(1, 0); });
  EXPECT_EQ(g.num_edges(), 1);
  EXPECT_EQ(g.edge(0).weight, 1.0);
}

TEST(Graph, IncidentCountsMatchRecount) {
  std::mt19937_64 rng(1);
  const int n = 120;
  std::uniform_int_distribution<int> node(0, n - 1);
  std::uniform_real_distribution<double> w(0.0, 3.0);
  Graph g(n);
  std::set<std::pair<int, int>> seen;
  std::vector<Edge> added;
  while (g.num_edges() < 1000) {
    const int u = node(rng);
    const int v = node(rng);
    if (u == v || !seen.insert({std::min(u, v), std::max(u, v)}).second) continue;
    const double weight = w(rng);
    g.AddEdge(u, v, weight);
    added.push_back({u, v, weight});
  }
  std::vector<int> count(n, 0);
  std::vector<double> wdeg(n, 0.0);
  for (const Edge& e : added) {
    ++count[e.u];
    ++count[e.v];
    wdeg[e.u] += e.weight;
    wdeg[e.v] += e.weight;
  }
  for (int v = 0; v < n; ++v) {
    EXPECT_EQ(g.incident_count(v), count[v]);
    EXPECT_NEAR(g.weighted_degree(v), wdeg[v], 1e-12);
    for (const Neighbor& nb : g.neighbors(v)) {
      const Edge& e = g.edge(nb.edge);
      EXPECT_TRUE((e.u == v && e.v == nb.node) || (e.v == v && e.u == nb.node));
    }
  }
}

TEST(Graph, WithoutNodesDropsIncidentEdges) {
  std::mt19937_64 rng(2);
  const Graph g = testing::RandomGraph(20, 0.3, rng);
  std::vector<bool> excluded(20, false);
  excluded[3] = excluded[7] = excluded[11] = true;
  const Graph h = WithoutNodes(g, excluded);
  EXPECT_EQ(h.num_nodes(), 20);
  int kept = 0;
  for (const Edge& e : g.edges()) {
    const bool keep = !excluded[e.u] && !excluded[e.v];
    EXPECT_EQ(h.HasEdge(e.u, e.v), keep);
    kept += keep;
  }
  EXPECT_EQ(h.num_edges(), kept);
}

TEST(PartitionEdges, AllOrNothingLabeled) {
  std::mt19937_64 rng(3);
  const Graph g = testing::RandomGraph(15, 0.3, rng);
  const EdgePartition all = PartitionEdges(g, std::vector<bool>(15, true));
  EXPECT_EQ(static_cast<int>(all.ll.size()), g.num_edges());
  EXPECT_TRUE(all.lu.empty());
  EXPECT_TRUE(all.uu.empty());
  const EdgePartition none = PartitionEdges(g, std::vector<bool>(15, false));
  EXPECT_EQ(static_cast<int>(none.uu.size()), g.num_edges());
  EXPECT_TRUE(none.ll.empty());
  EXPECT_TRUE(none.lu.empty());
}

TEST(PartitionEdges, MatchesPerEdgeClassification) {
  std::mt19937_64 rng(4);
  std::bernoulli_distribution coin(0.4);
  for (int trial = 0; trial < 50; ++trial) {
    const Graph g = testing::RandomGraph(25, 0.2, rng);
    std::vector<bool> mask(25);
    for (int v = 0; v < 25; ++v) mask[v] = coin(rng);
    const EdgePartition p = PartitionEdges(g, mask);
    EXPECT_EQ(p.ll.size() + p.lu.size() + p.uu.size(), static_cast<std::size_t>(g.num_edges()));
    std::vector<int> seen(g.num_edges(), 0);
    auto check = [&](const std::vector<int>& ids, int known) {
      for (int e : ids) {
        ++seen[e];
        EXPECT_EQ(mask[g.edge(e).u] + mask[g.edge(e).v], known);
      }
    };
    check(p.ll, 2);
    check(p.lu, 1);
    check(p.uu, 0);
    for (int s : seen) EXPECT_EQ(s, 1);
  }
}

TEST(AdjacencyFeatures, ThreeNodePath) {
  const std::vector<Edge> edges{{0, 1, 1.0}, {1, 2, 1.0}};
  const Matrix x = AdjacencyFeatures(LoadGraph(3, edges)).ToDense();
  EXPECT_EQ(x, Matrix::FromRows({{1, 1, 0}, {1, 1, 1}, {0, 1, 1}}));
}

TEST(AdjacencyFeatures, NoEdgesGiveIdentity) {
  const Matrix x = AdjacencyFeatures(Graph(4)).ToDense();
  EXPECT_EQ(x, Matrix::FromRows({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}));
}

TEST(AdjacencyFeatures, RowsAreSelfPlusNeighbors) {
  std::mt19937_64 rng(5);
  const Graph g = testing::RandomGraph(40, 0.15, rng, true);
  const NodeFeatures f = AdjacencyFeatures(g);
  ASSERT_EQ(f.rows(), 40);
  ASSERT_EQ(f.cols(), 40);
  for (int i = 0; i < 40; ++i) {
    std::set<int> expected{i};
    for (int j = 0; j < 40; ++j) {
      if (g.HasEdge(i, j)) expected.insert(j);
    }
    const SparseRow row = f.Row(i);
    EXPECT_EQ(row.indices.size(), 1 + static_cast<std::size_t>(g.incident_count(i)));
    EXPECT_EQ(std::set<int>(row.indices.begin(), row.indices.end()), expected);
    for (double v : row.values) EXPECT_EQ(v, 1.0);
  }
}

TEST(KnnGraph, IdenticalVectorsAndOrthogonalVectors) {
  const Graph same = KnnGraph(Matrix::FromRows({{0.6, 0.8}, {0.6, 0.8}}), 1);
  ASSERT_EQ(same.num_edges(), 1);
  EXPECT_EQ(same.edge(0).weight, 1.0);
  const Graph ortho = KnnGraph(Matrix::FromRows({{1, 0}, {0, 1}}), 1, 0.0);
  EXPECT_EQ(ortho.num_edges(), 0);
}

TEST(KnnGraph, ZeroNormRowRejected) {
  ExpectError(ErrorCode::kValidation, [] { KnnGraph(Matrix::FromRows({{1, 0}, {0, 0}}), 1); });
  ExpectError(ErrorCode::kValidation, [] { KnnGraph(Matrix::FromRows({{1, 0}, {0, 1}}), 0); });
}

TEST(KnnGraph, MatchesBruteForceTopK) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 5; ++trial) {
    const Matrix x = testing::RandomMatrix(50, 8, rng);
    for (double threshold : {0.0, 0.2}) {
      const Graph g = KnnGraph(x, 3, threshold);
      const auto expected = oracle::KnnEdges(x, 3, threshold);
      ASSERT_EQ(static_cast<std::size_t>(g.num_edges()), expected.size());
      for (const Edge& e : g.edges()) {
        EXPECT_NE(e.u, e.v);
        const auto it = expected.find({std::min(e.u, e.v), std::max(e.u, e.v)});
        ASSERT_NE(it, expected.end()) << e.u << "-" << e.v;
        EXPECT_NEAR(e.weight, it->second, 1e-12);
      }
    }
  }
}

TEST(KnnGraph, TiesGoToLowerIds) {
  // Nodes 1-4 are equally similar to node 0; each has an exact twin.
  const Matrix x = Matrix::FromRows({{1, 0, 0}, {1, 1, 0}, {1, 0, 1}, {1, 1, 0}, {1, 0, 1}});
  const Graph g = KnnGraph(x, 1);
  EXPECT_EQ(g.num_edges(), 3);
  EXPECT_TRUE(g.HasEdge(0, 1));
  EXPECT_TRUE(g.HasEdge(1, 3));
  EXPECT_TRUE(g.HasEdge(2, 4));
}

TEST(NodeLabels, SetSortsAndValidates) {
  NodeLabels labels(4, 3);
  labels.Set(1, std::vector<int>{2, 0, 2});
  EXPECT_EQ(labels.classes(1), (std::vector<int>{0, 2}));
  EXPECT_TRUE(labels.IsMultiLabel());
  labels.Set(3, 1);
  EXPECT_EQ(labels.LabeledNodes(), (std::vector<int>{1, 3}));
  EXPECT_EQ(labels.CountLabeled(), 2);
  labels.Clear(1);
  EXPECT_FALSE(labels.IsMultiLabel());
  ExpectError(ErrorCode::kInvalidLabel, [&] { labels.Set(0, 3); });
  ExpectError(ErrorCode::kInvalidLabel, [&] { labels.Set(4, 0); });
}

TEST(NodeFeatures, DenseRoundTripAndValidation) {
  const Matrix m = Matrix::FromRows({{0, 1.5, 0}, {2, 0, -1}});
  const NodeFeatures f = NodeFeatures::FromDense(m);
  EXPECT_EQ(f.ToDense(), m);
  EXPECT_EQ(f.nnz(), 6u);
  NodeFeatures g(3);
  const std::vector<int> bad_order{2, 1};
  const std::vector<double> vals{1.0, 1.0};
  ExpectError(ErrorCode::kShape, [&] { g.AppendRow(bad_order, vals); });
  const std::vector<int> out_of_range{3};
  const std::vector<double> one{1.0};
  ExpectError(ErrorCode::kShape, [&] { g.AppendRow(out_of_range, one); });
  const std::vector<int> ok{0};
  const std::vector<double> inf{INFINITY};
  ExpectError(ErrorCode::kValidation, [&] { g.AppendRow(ok, inf); });
}

}  // namespace
}  // namespace ngm
