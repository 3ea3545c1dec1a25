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

#include "ngm/labelprop.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "ngm/error.h"

namespace ngm {
namespace {

constexpr int kMaxDirectNodes = 200;
constexpr double kSimplexTolerance = 1e-9;

void CheckSimplex(std::span<const double> row, const std::string& what) {
  double sum = 0.0;
  for (double v : row) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      Fail(ErrorCode::kValidation, what + " has a negative or non-finite entry");
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) > kSimplexTolerance) {
    Fail(ErrorCode::kValidation, what + " does not sum to 1");
  }
}

// Per-node seed row index, or -1.
std::vector<int> ValidateInputs(const Graph& graph, const Seeds& seeds,
                                std::span<const double> prior) {
  const int n = graph.num_nodes();
  const int labels = static_cast<int>(prior.size());
  if (labels < 1) Fail(ErrorCode::kShape, "prior must have at least one label");
  CheckSimplex(prior, "prior");
  if (seeds.distributions.rows() != static_cast<int>(seeds.nodes.size()) ||
      (!seeds.nodes.empty() && seeds.distributions.cols() != labels)) {
    Fail(ErrorCode::kShape, "seed distributions do not match seeds/prior");
  }
  std::vector<int> seed_row(n, -1);
  for (std::size_t i = 0; i < seeds.nodes.size(); ++i) {
    const int v = seeds.nodes[i];
    if (v < 0 || v >= n) {
      Fail(ErrorCode::kShape, "seed node " + std::to_string(v) + " out of range");
    }
    if (seed_row[v] != -1) {
      Fail(ErrorCode::kValidation, "node " + std::to_string(v) + " seeded twice");
    }
    CheckSimplex(seeds.distributions.row(static_cast<int>(i)),
                 "seed row of node " + std::to_string(v));
    seed_row[v] = static_cast<int>(i);
  }
  return seed_row;
}

double SquaredDistance(std::span<const double> a, std::span<const double> b) {
  double total = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double r = a[k] - b[k];
    total += r * r;
  }
  return total;
}

}  // namespace

void LPConfig::Validate() const {
  for (double mu : {mu1, mu2, mu3}) {
    if (!(mu >= 0.0) || !std::isfinite(mu)) {
      Fail(ErrorCode::kInvalidConfig, "mu values must be finite and >= 0");
    }
  }
  if (!(mu1 > 0.0 || mu3 > 0.0)) {
    Fail(ErrorCode::kInvalidConfig, "need mu1 > 0 or mu3 > 0");
  }
  if (max_iter < 1) Fail(ErrorCode::kInvalidConfig, "max_iter must be >= 1");
  if (!(tol > 0.0)) Fail(ErrorCode::kInvalidConfig, "tol must be > 0");
}

Seeds SeedsFromLabels(const NodeLabels& labels) {
  Seeds seeds;
  std::vector<int> nodes;
  for (int v : labels.LabeledNodes()) {
    if (!labels.classes(v).empty()) nodes.push_back(v);
  }
  seeds.nodes = nodes;
  seeds.distributions = Matrix(static_cast<int>(nodes.size()), labels.num_classes());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto& classes = labels.classes(nodes[i]);
    for (int c : classes) {
      seeds.distributions(static_cast<int>(i), c) = 1.0 / classes.size();
    }
  }
  return seeds;
}

std::vector<double> UniformPrior(int num_labels) {
  if (num_labels < 1) Fail(ErrorCode::kShape, "need at least one label");
  return std::vector<double>(num_labels, 1.0 / num_labels);
}

double LpObjective(const Matrix& yhat, const Graph& graph, const Seeds& seeds,
                   std::span<const double> prior, const LPConfig& config) {
  const std::vector<int> seed_row = ValidateInputs(graph, seeds, prior);
  if (yhat.rows() != graph.num_nodes() ||
      yhat.cols() != static_cast<int>(prior.size())) {
    Fail(ErrorCode::kShape, "label distribution shape does not match graph/prior");
  }
  double seed_term = 0.0;
  double smooth_term = 0.0;
  double prior_term = 0.0;
  for (int v = 0; v < graph.num_nodes(); ++v) {
    if (seed_row[v] >= 0) {
      seed_term += SquaredDistance(yhat.row(v), seeds.distributions.row(seed_row[v]));
    }
    for (const Neighbor& nb : graph.neighbors(v)) {
      smooth_term += graph.edge(nb.edge).weight *
                     SquaredDistance(yhat.row(v), yhat.row(nb.node));
    }
    prior_term += SquaredDistance(yhat.row(v), prior);
  }
  return config.mu1 * seed_term + config.mu2 * smooth_term +
         config.mu3 * prior_term;
}

PropagationResult JacobiPropagate(
    const Graph& graph, const Seeds& seeds, std::span<const double> prior,
    const LPConfig& config,
    const std::function<void(int, const Matrix&)>& on_sweep) {
  config.Validate();
  const std::vector<int> seed_row = ValidateInputs(graph, seeds, prior);
  const int n = graph.num_nodes();
  const int labels = static_cast<int>(prior.size());

  PropagationResult result;
  Matrix current(n, labels);
  for (int v = 0; v < n; ++v) {
    auto row = current.row(v);
    if (seed_row[v] >= 0) {
      const auto seed = seeds.distributions.row(seed_row[v]);
      std::copy(seed.begin(), seed.end(), row.begin());
    } else {
      std::copy(prior.begin(), prior.end(), row.begin());
    }
  }

  // Because every edge appears from both endpoints, row v's coefficient on a
  // neighbor is 2 * mu2 * w_uv.
  std::vector<double> denominator(n);
  for (int v = 0; v < n; ++v) {
    denominator[v] = (seed_row[v] >= 0 ? config.mu1 : 0.0) +
                     2.0 * config.mu2 * graph.weighted_degree(v) + config.mu3;
    if (!(denominator[v] > 0.0)) result.stuck_nodes.push_back(v);
  }

  Matrix next = current;
  std::vector<double> acc(labels);
  for (int iter = 1; iter <= config.max_iter; ++iter) {
    double change = 0.0;
    for (int v = 0; v < n; ++v) {
      if (!(denominator[v] > 0.0)) continue;
      std::fill(acc.begin(), acc.end(), 0.0);
      if (seed_row[v] >= 0 && config.mu1 > 0.0) {
        const auto seed = seeds.distributions.row(seed_row[v]);
        for (int l = 0; l < labels; ++l) acc[l] += config.mu1 * seed[l];
      }
      if (config.mu2 > 0.0) {
        for (const Neighbor& nb : graph.neighbors(v)) {
          const double coeff = 2.0 * config.mu2 * graph.edge(nb.edge).weight;
          const auto other = current.row(nb.node);
          for (int l = 0; l < labels; ++l) acc[l] += coeff * other[l];
        }
      }
      if (config.mu3 > 0.0) {
        for (int l = 0; l < labels; ++l) acc[l] += config.mu3 * prior[l];
      }
      auto out = next.row(v);
      const auto prev = current.row(v);
      for (int l = 0; l < labels; ++l) {
        out[l] = acc[l] / denominator[v];
        change = std::max(change, std::abs(out[l] - prev[l]));
      }
    }
    std::swap(current, next);
    result.iterations = iter;
    result.last_change = change;
    if (on_sweep) on_sweep(iter, current);
    if (change < config.tol) {
      result.converged = true;
      break;
    }
  }
  result.distribution = std::move(current);
  return result;
}

Matrix DirectSolve(const Graph& graph, const Seeds& seeds,
                   std::span<const double> prior, const LPConfig& config) {
  config.Validate();
  const std::vector<int> seed_row = ValidateInputs(graph, seeds, prior);
  const int n = graph.num_nodes();
  const int labels = static_cast<int>(prior.size());
  if (n > kMaxDirectNodes) {
    Fail(ErrorCode::kInvalidConfig, "direct solve is limited to " +
                                        std::to_string(kMaxDirectNodes) +
                                        " nodes");
  }

  // A x = B, one right-hand side per label. Setting the row-v gradient to zero:
  // (mu1*[seeded] + 2*mu2*deg_w(v) + mu3) x_v - 2*mu2 * sum_u w_uv x_u
  //   = mu1*[seeded]*Y_v + mu3*U.
  Matrix a(n, n);
  Matrix b(n, labels);
  for (int v = 0; v < n; ++v) {
    const bool seeded = seed_row[v] >= 0;
    a(v, v) = (seeded ? config.mu1 : 0.0) + config.mu3;
    for (const Neighbor& nb : graph.neighbors(v)) {
      const double coeff = 2.0 * config.mu2 * graph.edge(nb.edge).weight;
      a(v, v) += coeff;
      a(v, nb.node) -= coeff;
    }
    for (int l = 0; l < labels; ++l) {
      b(v, l) = config.mu3 * prior[l] +
                (seeded ? config.mu1 * seeds.distributions(seed_row[v], l) : 0.0);
    }
  }

  double scale = 0.0;
  for (double v : a.data()) scale = std::max(scale, std::abs(v));
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int r = col + 1; r < n; ++r) {
      if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
    }
    if (std::abs(a(pivot, col)) <= 1e-13 * std::max(scale, 1.0)) {
      Fail(ErrorCode::kSingular, "propagation system is singular at column " +
                                     std::to_string(col));
    }
    if (pivot != col) {
      for (int c = 0; c < n; ++c) std::swap(a(col, c), a(pivot, c));
      for (int l = 0; l < labels; ++l) std::swap(b(col, l), b(pivot, l));
    }
    for (int r = col + 1; r < n; ++r) {
      const double f = a(r, col) / a(col, col);
      if (f == 0.0) continue;
      for (int c = col; c < n; ++c) a(r, c) -= f * a(col, c);
      for (int l = 0; l < labels; ++l) b(r, l) -= f * b(col, l);
    }
  }
  Matrix x(n, labels);
  for (int r = n - 1; r >= 0; --r) {
    for (int l = 0; l < labels; ++l) {
      double s = b(r, l);
      for (int c = r + 1; c < n; ++c) s -= a(r, c) * x(c, l);
      x(r, l) = s / a(r, r);
    }
  }
  return x;
}

std::vector<int> LpPredict(const Matrix& yhat) {
  std::vector<int> out(yhat.rows());
  for (int r = 0; r < yhat.rows(); ++r) {
    const auto row = yhat.row(r);
    out[r] = static_cast<int>(std::max_element(row.begin(), row.end()) - row.begin());
  }
  return out;
}

}  // namespace ngm
