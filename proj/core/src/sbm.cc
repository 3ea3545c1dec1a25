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

#include "ngm/sbm.h"

#include <cmath>
#include <random>

#include "ngm/error.h"

namespace ngm {

SbmDataset SbmGenerate(const SbmConfig& config, std::uint64_t seed) {
  if (config.blocks < 1 || config.nodes_per_block < 1) {
    Fail(ErrorCode::kInvalidConfig, "SBM needs >= 1 block of >= 1 node");
  }
  if (!(config.p_out >= 0.0 && config.p_out < config.p_in &&
        config.p_in <= 1.0)) {
    Fail(ErrorCode::kInvalidConfig,
         "SBM probabilities must satisfy 0 <= p_out < p_in <= 1");
  }
  if (!(config.feature_noise >= 0.0) || !std::isfinite(config.feature_noise)) {
    Fail(ErrorCode::kInvalidConfig, "feature noise must be finite and >= 0");
  }

  const int n = config.blocks * config.nodes_per_block;
  SbmDataset out{Graph(n), NodeFeatures(config.blocks), std::vector<int>(n)};
  for (int i = 0; i < n; ++i) out.blocks[i] = i / config.nodes_per_block;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      const double p =
          out.blocks[u] == out.blocks[v] ? config.p_in : config.p_out;
      if (coin(rng) < p) out.graph.AddEdge(u, v);
    }
  }

  std::normal_distribution<double> noise(0.0, 1.0);
  Matrix features(n, config.blocks);
  for (int i = 0; i < n; ++i) {
    for (int c = 0; c < config.blocks; ++c) {
      features(i, c) = (c == out.blocks[i] ? 1.0 : 0.0) +
                       config.feature_noise * noise(rng);
    }
  }
  out.features = NodeFeatures::FromDense(features);
  return out;
}

}  // namespace ngm
