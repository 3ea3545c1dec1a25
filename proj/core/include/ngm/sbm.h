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

#ifndef NGM_SBM_H_
#define NGM_SBM_H_

#include <cstdint>
#include <vector>

#include "ngm/graph.h"

namespace ngm {

struct SbmConfig {
  int blocks = 3;
  int nodes_per_block = 40;
  double p_in = 0.3;
  double p_out = 0.02;
  // Standard deviation of the Gaussian noise added to one-hot block features.
  double feature_noise = 0.5;
};

struct SbmDataset {
  Graph graph;
  NodeFeatures features;  // dense, blocks columns
  std::vector<int> blocks;  // node -> block; nodes are numbered block-major
};

// Every unordered pair is an edge independently with probability p_in (same
// block) or p_out (different blocks). Requires 0 <= p_out < p_in <= 1.
SbmDataset SbmGenerate(const SbmConfig& config, std::uint64_t seed);

}  // namespace ngm

#endif  // NGM_SBM_H_
