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

// Undirected weighted graphs, labeled/unlabeled edge partitioning, and the
// feature constructions used as network inputs.

#ifndef NGM_GRAPH_H_
#define NGM_GRAPH_H_

#include <cstdint>
#include <span>
#include <unordered_set>
#include <vector>

#include "ngm/matrix.h"

namespace ngm {

struct Edge {
  int u = 0;
  int v = 0;
  double weight = 1.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct Neighbor {
  int node = 0;
  int edge = 0;  // index into Graph::edges()
};

// Undirected graph without self-loops or parallel edges.
class Graph {
 public:
  explicit Graph(int num_nodes = 0);

  // Returns the new edge's index. Throws kValidation on out-of-range ids,
  // self-loops, duplicate unordered pairs and negative or non-finite weights.
  int AddEdge(int u, int v, double weight = 1.0);

  int num_nodes() const { return static_cast<int>(adjacency_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(int index) const { return edges_[index]; }

  std::span<const Neighbor> neighbors(int node) const {
    return adjacency_[node];
  }
  // |u|: the number of edges touching `node`.
  int incident_count(int node) const {
    return static_cast<int>(adjacency_[node].size());
  }
  double weighted_degree(int node) const;
  bool HasEdge(int u, int v) const;

 private:
  static std::uint64_t PairKey(int u, int v);

  std::vector<Edge> edges_;
  std::vector<std::vector<Neighbor>> adjacency_;
  std::unordered_set<std::uint64_t> pairs_;
};

Graph LoadGraph(int num_nodes, std::span<const Edge> edges);

// Keeps node ids but drops every edge with an endpoint in `excluded`.
Graph WithoutNodes(const Graph& graph, const std::vector<bool>& excluded);

enum class EdgeType { kLabeledLabeled, kLabeledUnlabeled, kUnlabeledUnlabeled };

// Edge indices split by how many endpoints carry a label.
struct EdgePartition {
  std::vector<int> ll;
  std::vector<int> lu;
  std::vector<int> uu;
};

EdgePartition PartitionEdges(const Graph& graph,
                             const std::vector<bool>& labeled);

// Per-node class sets. Single-label data stores one class per labeled node.
class NodeLabels {
 public:
  NodeLabels() = default;
  NodeLabels(int num_nodes, int num_classes);

  int num_nodes() const { return static_cast<int>(classes_.size()); }
  int num_classes() const { return num_classes_; }

  // Classes are sorted and deduplicated. Throws kInvalidLabel on bad ids.
  void Set(int node, std::vector<int> classes);
  void Set(int node, int label) { Set(node, std::vector<int>{label}); }
  void Clear(int node);

  bool IsLabeled(int node) const { return known_[node]; }
  const std::vector<int>& classes(int node) const { return classes_[node]; }
  // First class of a labeled node.
  int label(int node) const { return classes_[node].front(); }

  const std::vector<bool>& labeled_mask() const { return known_; }
  std::vector<int> LabeledNodes() const;
  int CountLabeled() const;
  bool IsMultiLabel() const;

  friend bool operator==(const NodeLabels&, const NodeLabels&) = default;

 private:
  int num_classes_ = 0;
  std::vector<std::vector<int>> classes_;
  std::vector<bool> known_;
};

// Compressed sparse row feature matrix, one row per node.
class NodeFeatures {
 public:
  NodeFeatures() = default;
  explicit NodeFeatures(int cols);

  static NodeFeatures FromDense(const Matrix& dense);

  // Indices must be strictly increasing and inside [0, cols); values finite.
  void AppendRow(std::span<const int> indices, std::span<const double> values);

  int rows() const { return static_cast<int>(row_ptr_.size()) - 1; }
  int cols() const { return cols_; }
  std::size_t nnz() const { return values_.size(); }

  SparseRow Row(int r) const;
  Matrix ToDense() const;

  friend bool operator==(const NodeFeatures&, const NodeFeatures&) = default;

 private:
  int cols_ = 0;
  std::vector<std::size_t> row_ptr_{0};
  std::vector<int> indices_;
  std::vector<double> values_;
};

// Row i is the binary vector with ones at i and at every neighbor of i.
NodeFeatures AdjacencyFeatures(const Graph& graph);

// Each node proposes its k most cosine-similar other nodes whose similarity
// exceeds `threshold` (ties go to the lower node id); the graph holds the union
// of all proposals with weight = similarity clamped to [0, 1]. Merged degrees
// can exceed k. Throws kValidation on a zero-norm row or k < 1.
Graph KnnGraph(const Matrix& embeddings, int k, double threshold = 0.0);

}  // namespace ngm

#endif  // NGM_GRAPH_H_
