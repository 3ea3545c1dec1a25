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

// Graph label propagation: the convex objective over soft label assignments,
// its Jacobi fixed-point solver, and a dense direct solver for small graphs.
//
// Objective, with the neighbor sum visiting every undirected edge from both
// endpoints:
//   mu1 * sum_{v seeded} |Yhat_v - Y_v|^2
// + mu2 * sum_v sum_{u in N(v)} w_uv |Yhat_v - Yhat_u|^2
// + mu3 * sum_v |Yhat_v - U|^2

#ifndef NGM_LABELPROP_H_
#define NGM_LABELPROP_H_

#include <functional>
#include <span>
#include <vector>

#include "ngm/graph.h"
#include "ngm/matrix.h"

namespace ngm {

struct LPConfig {
  double mu1 = 1.0;
  double mu2 = 1.0;
  double mu3 = 0.01;
  int max_iter = 10000;
  double tol = 1e-8;

  // Throws kInvalidConfig unless mus are finite and >= 0 with mu1 > 0 or
  // mu3 > 0, max_iter >= 1 and tol > 0.
  void Validate() const;
};

// Seed distributions: row i of `distributions` belongs to `nodes[i]`.
struct Seeds {
  std::vector<int> nodes;
  Matrix distributions;
};

// One-hot rows for single labels, uniform over the set for multi-label nodes.
Seeds SeedsFromLabels(const NodeLabels& labels);
std::vector<double> UniformPrior(int num_labels);

double LpObjective(const Matrix& yhat, const Graph& graph, const Seeds& seeds,
                   std::span<const double> prior, const LPConfig& config);

struct PropagationResult {
  Matrix distribution;
  int iterations = 0;
  bool converged = false;
  double last_change = 0.0;
  // Nodes with a zero update denominator; they keep their initial row.
  std::vector<int> stuck_nodes;
};

// Jacobi sweeps starting from seeds at Y and every other node at U. Each sweep
// replaces every row by the exact minimizer of the objective in that row given
// the previous iterate, a convex combination of simplex rows. Stops when the
// largest per-entry change drops below tol. `on_sweep` sees every iterate.
PropagationResult JacobiPropagate(
    const Graph& graph, const Seeds& seeds, std::span<const double> prior,
    const LPConfig& config,
    const std::function<void(int, const Matrix&)>& on_sweep = {});

// Solves the stationarity system of every label column by Gaussian elimination
// with partial pivoting. Limited to 200 nodes; throws kSingular when the
// system is singular.
Matrix DirectSolve(const Graph& graph, const Seeds& seeds,
                   std::span<const double> prior, const LPConfig& config);

// Row-wise argmax, ties to the lowest label.
std::vector<int> LpPredict(const Matrix& yhat);

}  // namespace ngm

#endif  // NGM_LABELPROP_H_
