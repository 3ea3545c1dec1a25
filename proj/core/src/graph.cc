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

#include "ngm/graph.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <utility>

#include "ngm/error.h"

namespace ngm {

Graph::Graph(int num_nodes) {
  if (num_nodes < 0) Fail(ErrorCode::kValidation, "negative node count");
  adjacency_.resize(num_nodes);
}

std::uint64_t Graph::PairKey(int u, int v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) |
         static_cast<std::uint32_t>(v);
}

int Graph::AddEdge(int u, int v, double weight) {
  const int n = num_nodes();
  if (u < 0 || u >= n || v < 0 || v >= n) {
    Fail(ErrorCode::kValidation, "edge (" + std::to_string(u) + ", " +
                                     std::to_string(v) +
                                     ") outside node range [0, " +
                                     std::to_string(n) + ")");
  }
  if (u == v) {
    Fail(ErrorCode::kValidation, "self-loop on node " + std::to_string(u));
  }
  if (!std::isfinite(weight) || weight < 0.0) {
    Fail(ErrorCode::kValidation, "edge (" + std::to_string(u) + ", " +
                                     std::to_string(v) +
                                     ") has invalid weight " +
                                     std::to_string(weight));
  }
  if (!pairs_.insert(PairKey(u, v)).second) {
    Fail(ErrorCode::kValidation, "duplicate edge (" + std::to_string(u) +
                                     ", " + std::to_string(v) + ")");
  }
  const int index = num_edges();
  edges_.push_back({u, v, weight});
  adjacency_[u].push_back({v, index});
  adjacency_[v].push_back({u, index});
  return index;
}

double Graph::weighted_degree(int node) const {
  double total = 0.0;
  for (const Neighbor& nb : adjacency_[node]) total += edges_[nb.edge].weight;
  return total;
}

bool Graph::HasEdge(int u, int v) const {
  return pairs_.contains(PairKey(u, v));
}

Graph LoadGraph(int num_nodes, std::span<const Edge> edges) {
  Graph graph(num_nodes);
  for (const Edge& e : edges) graph.AddEdge(e.u, e.v, e.weight);
  return graph;
}

Graph WithoutNodes(const Graph& graph, const std::vector<bool>& excluded) {
  if (static_cast<int>(excluded.size()) != graph.num_nodes()) {
    Fail(ErrorCode::kShape, "exclusion mask length does not match node count");
  }
  Graph out(graph.num_nodes());
  for (const Edge& e : graph.edges()) {
    if (!excluded[e.u] && !excluded[e.v]) out.AddEdge(e.u, e.v, e.weight);
  }
  return out;
}

EdgePartition PartitionEdges(const Graph& graph,
                             const std::vector<bool>& labeled) {
  if (static_cast<int>(labeled.size()) != graph.num_nodes()) {
    Fail(ErrorCode::kShape, "labeled mask has " +
                                std::to_string(labeled.size()) +
                                " entries for " +
                                std::to_string(graph.num_nodes()) + " nodes");
  }
  EdgePartition partition;
  for (int i = 0; i < graph.num_edges(); ++i) {
    const Edge& e = graph.edge(i);
    const int count = static_cast<int>(labeled[e.u]) + labeled[e.v];
    if (count == 2) {
      partition.ll.push_back(i);
    } else if (count == 1) {
      partition.lu.push_back(i);
    } else {
      partition.uu.push_back(i);
    }
  }
  return partition;
}

NodeLabels::NodeLabels(int num_nodes, int num_classes)
    : num_classes_(num_classes), classes_(num_nodes), known_(num_nodes, false) {
  if (num_nodes < 0 || num_classes < 1) {
    Fail(ErrorCode::kInvalidConfig, "labels need >= 0 nodes and >= 1 class");
  }
}

void NodeLabels::Set(int node, std::vector<int> classes) {
  if (node < 0 || node >= num_nodes()) {
    Fail(ErrorCode::kInvalidLabel, "node " + std::to_string(node) +
                                       " outside [0, " +
                                       std::to_string(num_nodes()) + ")");
  }
  for (int c : classes) {
    if (c < 0 || c >= num_classes_) {
      Fail(ErrorCode::kInvalidLabel,
           "class " + std::to_string(c) + " of node " + std::to_string(node) +
               " outside [0, " + std::to_string(num_classes_) + ")");
    }
  }
  std::sort(classes.begin(), classes.end());
  classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
  classes_[node] = std::move(classes);
  known_[node] = true;
}

void NodeLabels::Clear(int node) {
  classes_[node].clear();
  known_[node] = false;
}

std::vector<int> NodeLabels::LabeledNodes() const {
  std::vector<int> out;
  for (int i = 0; i < num_nodes(); ++i) {
    if (known_[i]) out.push_back(i);
  }
  return out;
}

int NodeLabels::CountLabeled() const {
  return static_cast<int>(std::count(known_.begin(), known_.end(), true));
}

bool NodeLabels::IsMultiLabel() const {
  for (int i = 0; i < num_nodes(); ++i) {
    if (known_[i] && classes_[i].size() != 1) return true;
  }
  return false;
}

NodeFeatures::NodeFeatures(int cols) : cols_(cols) {
  if (cols < 0) Fail(ErrorCode::kShape, "negative feature dimension");
}

NodeFeatures NodeFeatures::FromDense(const Matrix& dense) {
  NodeFeatures out(dense.cols());
  std::vector<int> indices(dense.cols());
  for (int c = 0; c < dense.cols(); ++c) indices[c] = c;
  for (int r = 0; r < dense.rows(); ++r) out.AppendRow(indices, dense.row(r));
  return out;
}

void NodeFeatures::AppendRow(std::span<const int> indices,
                             std::span<const double> values) {
  const int row = rows();
  if (indices.size() != values.size()) {
    Fail(ErrorCode::kShape, "feature row " + std::to_string(row) +
                                ": index/value length mismatch");
  }
  for (std::size_t t = 0; t < indices.size(); ++t) {
    if (indices[t] < 0 || indices[t] >= cols_ ||
        (t > 0 && indices[t] <= indices[t - 1])) {
      Fail(ErrorCode::kShape, "feature row " + std::to_string(row) +
                                  ": indices must increase inside [0, " +
                                  std::to_string(cols_) + ")");
    }
    if (!std::isfinite(values[t])) {
      Fail(ErrorCode::kValidation,
           "feature row " + std::to_string(row) + " has a non-finite value");
    }
  }
  indices_.insert(indices_.end(), indices.begin(), indices.end());
  values_.insert(values_.end(), values.begin(), values.end());
  row_ptr_.push_back(values_.size());
}

SparseRow NodeFeatures::Row(int r) const {
  const std::size_t begin = row_ptr_[r];
  const std::size_t len = row_ptr_[r + 1] - begin;
  return {std::span<const int>(indices_.data() + begin, len),
          std::span<const double>(values_.data() + begin, len)};
}

Matrix NodeFeatures::ToDense() const {
  Matrix out(rows(), cols_);
  for (int r = 0; r < rows(); ++r) {
    const SparseRow row = Row(r);
    for (std::size_t t = 0; t < row.indices.size(); ++t) {
      out(r, row.indices[t]) = row.values[t];
    }
  }
  return out;
}

NodeFeatures AdjacencyFeatures(const Graph& graph) {
  const int n = graph.num_nodes();
  NodeFeatures out(n);
  std::vector<int> indices;
  std::vector<double> ones;
  for (int i = 0; i < n; ++i) {
    indices.clear();
    indices.push_back(i);
    for (const Neighbor& nb : graph.neighbors(i)) indices.push_back(nb.node);
    std::sort(indices.begin(), indices.end());
    ones.assign(indices.size(), 1.0);
    out.AppendRow(indices, ones);
  }
  return out;
}

Graph KnnGraph(const Matrix& embeddings, int k, double threshold) {
  if (k < 1) Fail(ErrorCode::kValidation, "k must be >= 1");
  const int n = embeddings.rows();
  std::vector<double> norms(n);
  for (int i = 0; i < n; ++i) {
    double sq = 0.0;
    for (double v : embeddings.row(i)) sq += v * v;
    norms[i] = std::sqrt(sq);
    if (!(norms[i] > 0.0) || !std::isfinite(norms[i])) {
      Fail(ErrorCode::kValidation,
           "embedding row " + std::to_string(i) + " has zero or invalid norm");
    }
  }
  auto cosine = [&](int a, int b) {
    const auto x = embeddings.row(a);
    const auto y = embeddings.row(b);
    double dot = 0.0;
    for (int c = 0; c < embeddings.cols(); ++c) dot += x[c] * y[c];
    return dot / (norms[a] * norms[b]);
  };

  std::map<std::pair<int, int>, double> proposals;
  std::vector<std::pair<double, int>> scored;
  for (int i = 0; i < n; ++i) {
    scored.clear();
    for (int j = 0; j < n; ++j) {
      if (j != i) scored.emplace_back(cosine(i, j), j);
    }
    const auto keep = std::min<std::size_t>(k, scored.size());
    std::partial_sort(scored.begin(), scored.begin() + keep, scored.end(),
                      [](const auto& a, const auto& b) {
                        return a.first != b.first ? a.first > b.first
                                                  : a.second < b.second;
                      });
    for (std::size_t t = 0; t < keep; ++t) {
      if (!(scored[t].first > threshold)) break;
      const int j = scored[t].second;
      const double w = std::clamp(scored[t].first, 0.0, 1.0);
      proposals.emplace(std::minmax(i, j), w);
    }
  }
  Graph graph(n);
  for (const auto& [pair, w] : proposals) graph.AddEdge(pair.first, pair.second, w);
  return graph;
}

}  // namespace ngm
