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
#include <vector>

#include "ngm/sbm.h"
#include "test_util.h"

namespace ngm {
namespace {

using testing::ExpectError;

TEST(Sbm, ForcedTopologyIsTwoTriangles) {
  SbmConfig c;
  c.blocks = 2;
  c.nodes_per_block = 3;
  c.p_in = 1.0;
  c.p_out = 0.0;
  const SbmDataset d = SbmGenerate(c, 5);
  EXPECT_EQ(d.graph.num_edges(), 6);
  for (int u = 0; u < 6; ++u) {
    for (int v = u + 1; v < 6; ++v) EXPECT_EQ(d.graph.HasEdge(u, v), u / 3 == v / 3);
  }
  EXPECT_EQ(d.blocks, (std::vector<int>{0, 0, 0, 1, 1, 1}));
}

TEST(Sbm, InvalidProbabilities) {
  SbmConfig c;
  c.p_in = c.p_out = 0.2;
  ExpectError(ErrorCode::kInvalidConfig, [&] { SbmGenerate(c, 1); });
  c.p_in = 1.2;
  ExpectError(ErrorCode::kInvalidConfig, [&] { SbmGenerate(c, 1); });
  c.p_in = 0.5;
  c.p_out = -0.1;
  ExpectError(ErrorCode::kInvalidConfig, [&] { SbmGenerate(c, 1); });
  c.p_out = 0.1;
  c.feature_noise = -1;
  ExpectError(ErrorCode::kInvalidConfig, [&] { SbmGenerate(c, 1); });
}

TEST(Sbm, DensitiesWithinThreeSigma) {
  SbmConfig c;
  c.blocks = 3;
  c.nodes_per_block = 20;
  c.p_in = 0.3;
  c.p_out = 0.02;
  const int n = c.blocks * c.nodes_per_block;
  const double within_pairs = c.blocks * c.nodes_per_block * (c.nodes_per_block - 1) / 2.0;
  const double between_pairs = n * (n - 1) / 2.0 - within_pairs;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const SbmDataset d = SbmGenerate(c, seed);
    int within = 0;
    int between = 0;
    for (const Edge& e : d.graph.edges()) {
      (d.blocks[e.u] == d.blocks[e.v] ? within : between) += 1;
    }
    EXPECT_LE(std::fabs(within - within_pairs * c.p_in),
              3 * std::sqrt(within_pairs * c.p_in * (1 - c.p_in)))
        << "seed " << seed;
    EXPECT_LE(std::fabs(between - between_pairs * c.p_out),
              3 * std::sqrt(between_pairs * c.p_out * (1 - c.p_out)))
        << "seed " << seed;
  }
}

TEST(Sbm, NoBetweenEdgesWhenPOutIsZero) {
  SbmConfig c;
  c.p_out = 0.0;
  const SbmDataset d = SbmGenerate(c, 3);
  for (const Edge& e : d.graph.edges()) EXPECT_EQ(d.blocks[e.u], d.blocks[e.v]);
}

TEST(Sbm, DeterministicPerSeed) {
  const SbmConfig c;
  const SbmDataset a = SbmGenerate(c, 11);
  const SbmDataset b = SbmGenerate(c, 11);
  EXPECT_EQ(a.graph.edges(), b.graph.edges());
  EXPECT_EQ(a.features, b.features);
  EXPECT_NE(a.graph.edges(), SbmGenerate(c, 12).graph.edges());
}

TEST(Sbm, FeaturesAreNoisyOneHotCentroids) {
  SbmConfig c;
  c.blocks = 3;
  c.nodes_per_block = 200;
  c.feature_noise = 0.5;
  const SbmDataset d = SbmGenerate(c, 7);
  const Matrix x = d.features.ToDense();
  ASSERT_EQ(x.rows(), 600);
  ASSERT_EQ(x.cols(), 3);
  for (int b = 0; b < 3; ++b) {
    for (int k = 0; k < 3; ++k) {
      double mean = 0.0;
      double sq = 0.0;
      for (int v = b * 200; v < (b + 1) * 200; ++v) {
        mean += x(v, k) / 200;
        sq += x(v, k) * x(v, k) / 200;
      }
      const double sd = std::sqrt(sq - mean * mean);
      // Sample mean within 4 standard errors; sample sd within 20%.
      EXPECT_NEAR(mean, b == k ? 1.0 : 0.0, 4 * 0.5 / std::sqrt(200.0));
      EXPECT_NEAR(sd, 0.5, 0.1);
    }
  }
  c.feature_noise = 0.0;
  const Matrix exact = SbmGenerate(c, 7).features.ToDense();
  for (int v = 0; v < 600; ++v) {
    for (int k = 0; k < 3; ++k) EXPECT_EQ(exact(v, k), v / 200 == k ? 1.0 : 0.0);
  }
}

}  // namespace
}  // namespace ngm
