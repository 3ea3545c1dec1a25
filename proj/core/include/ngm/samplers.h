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

// Seeded minibatch samplers over edges and labeled nodes.

#ifndef NGM_SAMPLERS_H_
#define NGM_SAMPLERS_H_

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "ngm/graph.h"

namespace ngm {

enum class SamplerMode {
  kUniformShuffle,
  // Grows each batch from a seed edge through edges incident to nodes already
  // in the batch, so batches share endpoints where the graph allows it.
  kNeighborhood,
};

struct EdgeBatch {
  std::vector<int> edges;
  std::vector<EdgeType> types;
};

// Mixes a base seed with a stream id (splitmix64 finalizer).
std::uint64_t DeriveSeed(std::uint64_t base, std::uint64_t stream);

// Emits epochs of edge batches; every eligible edge appears exactly once per
// epoch. Keeps a pointer to `graph`, which must outlive the sampler.
class EdgeBatchSampler {
 public:
  EdgeBatchSampler(const Graph& graph, const EdgePartition& partition,
                   int batch_size, SamplerMode mode, std::uint64_t seed,
                   bool include_uu = true);

  std::vector<EdgeBatch> NextEpoch();

  // Number of edges covered by one epoch.
  int num_edges() const { return static_cast<int>(eligible_.size()); }

 private:
  std::vector<EdgeBatch> UniformEpoch(const std::vector<int>& order) const;
  std::vector<EdgeBatch> NeighborhoodEpoch(const std::vector<int>& order) const;

  const Graph* graph_;
  int batch_size_;
  SamplerMode mode_;
  std::mt19937_64 rng_;
  std::vector<int> eligible_;
  // Indexed by edge id; kUnset for edges outside the epoch.
  std::vector<int> type_of_;
};

// Emits node batches whose class histogram is as close to uniform over the
// present classes as the batch size permits (every count is floor or ceil of
// batch_size / num_present). Small classes are drawn repeatedly by cycling a
// reshuffled queue.
class ClassBalancedSampler {
 public:
  // `strata[i]` is the class of `nodes[i]`. Classes in [0, num_classes) with
  // no members are reported through excluded_classes().
  ClassBalancedSampler(std::span<const int> nodes, std::span<const int> strata,
                       int batch_size, std::uint64_t seed,
                       int num_classes = -1);

  std::vector<int> NextBatch();

  const std::vector<int>& present_classes() const { return present_; }
  const std::vector<int>& excluded_classes() const { return excluded_; }

 private:
  int Draw(int slot);

  int batch_size_;
  std::mt19937_64 rng_;
  std::vector<int> present_;
  std::vector<int> excluded_;
  std::vector<std::vector<int>> members_;  // per present class
  std::vector<std::size_t> cursor_;
  std::size_t rotation_ = 0;
};

}  // namespace ngm

#endif  // NGM_SAMPLERS_H_
