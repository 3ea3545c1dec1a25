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

#include "ngm/samplers.h"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>

#include "ngm/error.h"

namespace ngm {
namespace {

constexpr int kUnset = -1;

}  // namespace

std::uint64_t DeriveSeed(std::uint64_t base, std::uint64_t stream) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

EdgeBatchSampler::EdgeBatchSampler(const Graph& graph,
                                   const EdgePartition& partition,
                                   int batch_size, SamplerMode mode,
                                   std::uint64_t seed, bool include_uu)
    : graph_(&graph),
      batch_size_(batch_size),
      mode_(mode),
      rng_(seed),
      type_of_(graph.num_edges(), kUnset) {
  if (batch_size < 1) Fail(ErrorCode::kInvalidConfig, "batch size must be >= 1");
  auto take = [&](const std::vector<int>& edges, EdgeType type) {
    for (int e : edges) {
      if (e < 0 || e >= graph.num_edges() || type_of_[e] != kUnset) {
        Fail(ErrorCode::kValidation, "partition does not match the graph");
      }
      type_of_[e] = static_cast<int>(type);
      eligible_.push_back(e);
    }
  };
  take(partition.ll, EdgeType::kLabeledLabeled);
  take(partition.lu, EdgeType::kLabeledUnlabeled);
  if (include_uu) take(partition.uu, EdgeType::kUnlabeledUnlabeled);
  std::sort(eligible_.begin(), eligible_.end());
}

std::vector<EdgeBatch> EdgeBatchSampler::NextEpoch() {
  std::vector<int> order = eligible_;
  std::shuffle(order.begin(), order.end(), rng_);
  return mode_ == SamplerMode::kUniformShuffle ? UniformEpoch(order)
                                               : NeighborhoodEpoch(order);
}

std::vector<EdgeBatch> EdgeBatchSampler::UniformEpoch(
    const std::vector<int>& order) const {
  std::vector<EdgeBatch> batches;
  for (std::size_t start = 0; start < order.size(); start += batch_size_) {
    EdgeBatch batch;
    const std::size_t end = std::min(order.size(), start + batch_size_);
    for (std::size_t i = start; i < end; ++i) {
      batch.edges.push_back(order[i]);
      batch.types.push_back(static_cast<EdgeType>(type_of_[order[i]]));
    }
    batches.push_back(std::move(batch));
  }
  return batches;
}

std::vector<EdgeBatch> EdgeBatchSampler::NeighborhoodEpoch(
    const std::vector<int>& order) const {
  const Graph& g = *graph_;
  std::vector<bool> used(g.num_edges(), false);
  std::vector<EdgeBatch> batches;
  std::size_t next_seed = 0;
  std::size_t remaining = order.size();

  while (remaining > 0) {
    EdgeBatch batch;
    std::vector<int> nodes;  // batch nodes in insertion order
    std::vector<bool> in_batch(g.num_nodes(), false);
    auto add = [&](int e) {
      used[e] = true;
      --remaining;
      batch.edges.push_back(e);
      batch.types.push_back(static_cast<EdgeType>(type_of_[e]));
      for (int node : {g.edge(e).u, g.edge(e).v}) {
        if (!in_batch[node]) {
          in_batch[node] = true;
          nodes.push_back(node);
        }
      }
    };

    std::size_t frontier = 0;
    while (static_cast<int>(batch.edges.size()) < batch_size_ && remaining > 0) {
      // Expand through edges incident to nodes already in the batch.
      bool grew = false;
      while (frontier < nodes.size() &&
             static_cast<int>(batch.edges.size()) < batch_size_) {
        bool added_here = false;
        for (const Neighbor& nb : g.neighbors(nodes[frontier])) {
          if (type_of_[nb.edge] == kUnset || used[nb.edge]) continue;
          add(nb.edge);
          grew = added_here = true;
          if (static_cast<int>(batch.edges.size()) >= batch_size_) break;
        }
        if (!added_here) ++frontier;
      }
      if (grew) continue;
      // Exhausted: start from a fresh seed edge.
      while (used[order[next_seed]]) ++next_seed;
      add(order[next_seed]);
    }
    batches.push_back(std::move(batch));
  }
  return batches;
}

ClassBalancedSampler::ClassBalancedSampler(std::span<const int> nodes,
                                           std::span<const int> strata,
                                           int batch_size, std::uint64_t seed,
                                           int num_classes)
    : batch_size_(batch_size), rng_(seed) {
  if (batch_size < 1) Fail(ErrorCode::kInvalidConfig, "batch size must be >= 1");
  if (nodes.size() != strata.size()) {
    Fail(ErrorCode::kShape, "node and class lists differ in length");
  }
  if (nodes.empty()) {
    Fail(ErrorCode::kInvalidConfig, "class-balanced sampler needs at least one node");
  }
  std::map<int, std::vector<int>> by_class;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (strata[i] < 0 || (num_classes >= 0 && strata[i] >= num_classes)) {
      Fail(ErrorCode::kInvalidLabel, "class " + std::to_string(strata[i]) +
                                         " of node " + std::to_string(nodes[i]) +
                                         " is out of range");
    }
    by_class[strata[i]].push_back(nodes[i]);
  }
  for (int c = 0; c < num_classes; ++c) {
    if (!by_class.contains(c)) excluded_.push_back(c);
  }
  for (auto& [c, members] : by_class) {
    present_.push_back(c);
    std::shuffle(members.begin(), members.end(), rng_);
    members_.push_back(std::move(members));
    cursor_.push_back(0);
  }
}

int ClassBalancedSampler::Draw(int slot) {
  std::vector<int>& pool = members_[slot];
  if (cursor_[slot] == pool.size()) {
    std::shuffle(pool.begin(), pool.end(), rng_);
    cursor_[slot] = 0;
  }
  return pool[cursor_[slot]++];
}

std::vector<int> ClassBalancedSampler::NextBatch() {
  const std::size_t classes = present_.size();
  const std::size_t base = batch_size_ / classes;
  const std::size_t extra = batch_size_ % classes;
  std::vector<int> batch;
  batch.reserve(batch_size_);
  for (std::size_t slot = 0; slot < classes; ++slot) {
    // The `extra` leftover draws rotate over classes from batch to batch.
    const std::size_t offset = (slot + classes - rotation_ % classes) % classes;
    const std::size_t count = base + (offset < extra ? 1 : 0);
    for (std::size_t t = 0; t < count; ++t) {
      batch.push_back(Draw(static_cast<int>(slot)));
    }
  }
  rotation_ += extra;
  return batch;
}

}  // namespace ngm
