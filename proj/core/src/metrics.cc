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

#include "ngm/metrics.h"

#include <algorithm>
#include <string>

#include "json.hpp"
#include "ngm/error.h"

namespace ngm {
namespace {

double Ratio(int num, int den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / den;
}

double Harmonic(double p, double r) {
  return p + r == 0.0 ? 0.0 : 2.0 * p * r / (p + r);
}

std::vector<bool> AsMask(const std::vector<int>& labels, int num_classes) {
  std::vector<bool> mask(num_classes, false);
  for (int c : labels) {
    if (c < 0 || c >= num_classes) {
      Fail(ErrorCode::kInvalidLabel, "label " + std::to_string(c) +
                                         " outside [0, " +
                                         std::to_string(num_classes) + ")");
    }
    mask[c] = true;
  }
  return mask;
}

void CheckLengths(std::size_t a, std::size_t b) {
  if (a != b) {
    Fail(ErrorCode::kShape, "prediction/truth length mismatch: " +
                                std::to_string(a) + " vs " + std::to_string(b));
  }
}

}  // namespace

F1Report F1Scores(std::span<const std::vector<int>> predicted,
                  std::span<const std::vector<int>> truth, int num_classes) {
  CheckLengths(predicted.size(), truth.size());
  if (num_classes < 1) Fail(ErrorCode::kInvalidConfig, "need >= 1 class");
  F1Report report;
  report.per_class.resize(num_classes);
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    const std::vector<bool> p = AsMask(predicted[i], num_classes);
    const std::vector<bool> t = AsMask(truth[i], num_classes);
    for (int c = 0; c < num_classes; ++c) {
      ClassScores& s = report.per_class[c];
      if (p[c] && t[c]) ++s.tp;
      if (p[c] && !t[c]) ++s.fp;
      if (!p[c] && t[c]) ++s.fn;
    }
  }
  int tp = 0;
  int fp = 0;
  int fn = 0;
  double f1_sum = 0.0;
  for (ClassScores& s : report.per_class) {
    s.precision = Ratio(s.tp, s.tp + s.fp);
    s.recall = Ratio(s.tp, s.tp + s.fn);
    s.f1 = Harmonic(s.precision, s.recall);
    f1_sum += s.f1;
    tp += s.tp;
    fp += s.fp;
    fn += s.fn;
  }
  report.macro = f1_sum / num_classes;
  report.micro = Harmonic(Ratio(tp, tp + fp), Ratio(tp, tp + fn));
  return report;
}

int TrueClassRank(std::span<const double> scores, int truth) {
  if (truth < 0 || truth >= static_cast<int>(scores.size())) {
    Fail(ErrorCode::kInvalidLabel, "true class " + std::to_string(truth) +
                                       " outside score row");
  }
  const double target = scores[truth];
  int rank = 1;
  for (int k = 0; k < static_cast<int>(scores.size()); ++k) {
    if (scores[k] > target || (scores[k] == target && k < truth)) ++rank;
  }
  return rank;
}

double Mrr(const Matrix& scores, std::span<const int> truth) {
  CheckLengths(static_cast<std::size_t>(scores.rows()), truth.size());
  if (truth.empty()) Fail(ErrorCode::kShape, "MRR needs at least one example");
  double total = 0.0;
  for (int i = 0; i < scores.rows(); ++i) {
    total += 1.0 / TrueClassRank(scores.row(i), truth[i]);
  }
  return total / scores.rows();
}

double Accuracy(std::span<const int> predicted, std::span<const int> truth) {
  CheckLengths(predicted.size(), truth.size());
  if (truth.empty()) return 0.0;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) hits += predicted[i] == truth[i];
  return static_cast<double>(hits) / truth.size();
}

EvalReport Evaluate(const Matrix& scores, std::span<const int> truth) {
  CheckLengths(static_cast<std::size_t>(scores.rows()), truth.size());
  EvalReport report;
  report.num_examples = scores.rows();
  std::vector<int> predicted(scores.rows());
  std::vector<std::vector<int>> predicted_sets(scores.rows());
  std::vector<std::vector<int>> truth_sets(scores.rows());
  for (int i = 0; i < scores.rows(); ++i) {
    const auto row = scores.row(i);
    predicted[i] = static_cast<int>(std::max_element(row.begin(), row.end()) - row.begin());
    predicted_sets[i] = {predicted[i]};
    truth_sets[i] = {truth[i]};
  }
  report.accuracy = Accuracy(predicted, truth);
  if (scores.rows() > 0) {
    report.mrr = Mrr(scores, truth);
    report.f1 = F1Scores(predicted_sets, truth_sets, scores.cols());
  }
  return report;
}

std::string EvalReportToJson(const EvalReport& report, int indent) {
  nlohmann::ordered_json j;
  j["num_examples"] = report.num_examples;
  j["accuracy"] = report.accuracy;
  j["mrr"] = report.mrr;
  j["macro_f1"] = report.f1.macro;
  j["micro_f1"] = report.f1.micro;
  nlohmann::ordered_json classes = nlohmann::ordered_json::array();
  for (std::size_t c = 0; c < report.f1.per_class.size(); ++c) {
    const ClassScores& s = report.f1.per_class[c];
    classes.push_back({{"class", c},
                       {"tp", s.tp},
                       {"fp", s.fp},
                       {"fn", s.fn},
                       {"precision", s.precision},
                       {"recall", s.recall},
                       {"f1", s.f1}});
  }
  j["per_class"] = std::move(classes);
  return j.dump(indent);
}

}  // namespace ngm
