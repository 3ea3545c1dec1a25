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

#ifndef NGM_METRICS_H_
#define NGM_METRICS_H_

#include <span>
#include <string>
#include <vector>

#include "ngm/matrix.h"

namespace ngm {

struct ClassScores {
  int tp = 0;
  int fp = 0;
  int fn = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

struct F1Report {
  double macro = 0.0;
  double micro = 0.0;
  std::vector<ClassScores> per_class;
};

// Label sets per example. 0/0 ratios count as 0, so a class that is neither
// predicted nor present contributes 0 to the macro average over all classes.
// Throws kInvalidLabel for labels outside [0, num_classes).
F1Report F1Scores(std::span<const std::vector<int>> predicted,
                  std::span<const std::vector<int>> truth, int num_classes);

// 1 + #classes scoring strictly higher + #lower-indexed classes scoring equal.
int TrueClassRank(std::span<const double> scores, int truth);

// Mean of 1 / TrueClassRank over the rows of `scores`.
double Mrr(const Matrix& scores, std::span<const int> truth);

// Fraction of exact matches; 0 for empty input.
double Accuracy(std::span<const int> predicted, std::span<const int> truth);

struct EvalReport {
  int num_examples = 0;
  double accuracy = 0.0;
  double mrr = 0.0;
  F1Report f1;
};

// Single-label evaluation from per-example class scores.
EvalReport Evaluate(const Matrix& scores, std::span<const int> truth);

std::string EvalReportToJson(const EvalReport& report, int indent = 2);

}  // namespace ngm

#endif  // NGM_METRICS_H_
