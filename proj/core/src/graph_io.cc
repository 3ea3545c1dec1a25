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

#include "ngm/graph_io.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <system_error>
#include <utility>

#include "ngm/error.h"

namespace ngm {
namespace {

struct LineReader {
  LineReader(std::istream& in, std::string_view source)
      : in(in), source(source) {}

  std::istream& in;
  std::string_view source;
  int number = 0;
  std::string line;

  // Next non-blank, non-comment line with any trailing '\r' removed.
  bool Next() {
    while (std::getline(in, line)) {
      ++number;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      const auto first = line.find_first_not_of(" \t");
      if (first == std::string::npos || line[first] == '#') continue;
      return true;
    }
    return false;
  }

  [[noreturn]] void Error(const std::string& message) const {
    Fail(ErrorCode::kParse, std::string(source) + ":" +
                                std::to_string(number) + ": " + message);
  }
};

std::vector<std::string_view> Split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    out.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string_view Trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::optional<int> ParseInt(std::string_view text) {
  text = Trim(text);
  int value = 0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    return std::nullopt;
  }
  return value;
}

std::optional<double> TryParseDouble(std::string_view text) {
  text = Trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    return std::nullopt;
  }
  return value;
}

int NodeId(const LineReader& reader, std::string_view field) {
  const auto id = ParseInt(field);
  if (!id || *id < 0) {
    reader.Error("invalid node id '" + std::string(field) + "'");
  }
  return *id;
}

std::string ListIds(const std::vector<int>& ids) {
  std::string out;
  const std::size_t shown = std::min<std::size_t>(ids.size(), 20);
  for (std::size_t i = 0; i < shown; ++i) {
    if (i > 0) out += ", ";
    out += std::to_string(ids[i]);
  }
  if (ids.size() > shown) {
    out += ", ... (" + std::to_string(ids.size()) + " total)";
  }
  return out;
}

}  // namespace

std::string FormatDouble(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) Fail(ErrorCode::kInternal, "double formatting failed");
  return std::string(buf, ptr);
}

double ParseDouble(std::string_view text) {
  const auto value = TryParseDouble(text);
  if (!value) {
    Fail(ErrorCode::kParse, "invalid number '" + std::string(text) + "'");
  }
  return *value;
}

std::vector<Edge> ReadEdgeList(std::istream& in, std::string_view source) {
  LineReader reader(in, source);
  std::vector<Edge> edges;
  std::set<std::pair<int, int>> seen;
  while (reader.Next()) {
    const auto fields = Split(reader.line, '\t');
    if (fields.size() != 2 && fields.size() != 3) {
      reader.Error("expected 'u<TAB>v[<TAB>w]', got " +
                   std::to_string(fields.size()) + " fields");
    }
    Edge e{NodeId(reader, fields[0]), NodeId(reader, fields[1]), 1.0};
    if (fields.size() == 3) {
      const auto w = TryParseDouble(fields[2]);
      if (!w) reader.Error("invalid weight '" + std::string(fields[2]) + "'");
      e.weight = *w;
    }
    if (e.u == e.v) reader.Error("self-loop on node " + std::to_string(e.u));
    if (!std::isfinite(e.weight) || e.weight < 0.0) {
      reader.Error("weight must be finite and >= 0");
    }
    if (!seen.insert({std::min(e.u, e.v), std::max(e.u, e.v)}).second) {
      reader.Error("duplicate edge (" + std::to_string(e.u) + ", " +
                   std::to_string(e.v) + ")");
    }
    edges.push_back(e);
  }
  return edges;
}

Graph ReadGraph(std::istream& in, int num_nodes, std::string_view source) {
  const std::vector<Edge> edges = ReadEdgeList(in, source);
  if (num_nodes < 0) {
    num_nodes = 0;
    for (const Edge& e : edges) num_nodes = std::max({num_nodes, e.u + 1, e.v + 1});
  }
  return LoadGraph(num_nodes, edges);
}

void WriteEdgeList(std::ostream& out, const Graph& graph) {
  for (const Edge& e : graph.edges()) {
    out << e.u << '\t' << e.v << '\t' << FormatDouble(e.weight) << '\n';
  }
}

NodeFeatures ReadFeatures(std::istream& in, int num_nodes, int dim,
                          std::string_view source) {
  LineReader reader(in, source);
  struct Row {
    std::vector<int> indices;
    std::vector<double> values;
  };
  std::map<int, Row> rows;
  int inferred_dim = 0;
  std::optional<int> dense_width;

  while (reader.Next()) {
    const auto tab = reader.line.find('\t');
    if (tab == std::string::npos) reader.Error("expected 'node<TAB>values'");
    const int node = NodeId(reader, std::string_view(reader.line).substr(0, tab));
    const std::string_view body = Trim(std::string_view(reader.line).substr(tab + 1));
    Row row;
    if (body.find(':') != std::string_view::npos) {
      for (std::string_view token : Split(body, ' ')) {
        token = Trim(token);
        if (token.empty()) continue;
        const auto colon = token.find(':');
        const auto idx = colon == std::string_view::npos
                             ? std::nullopt
                             : ParseInt(token.substr(0, colon));
        const auto val = colon == std::string_view::npos
                             ? std::nullopt
                             : TryParseDouble(token.substr(colon + 1));
        if (!idx || *idx < 0 || !val) {
          reader.Error("invalid sparse entry '" + std::string(token) + "'");
        }
        if (!row.indices.empty() && *idx <= row.indices.back()) {
          reader.Error("sparse indices must be strictly increasing");
        }
        row.indices.push_back(*idx);
        row.values.push_back(*val);
        inferred_dim = std::max(inferred_dim, *idx + 1);
      }
    } else if (!body.empty()) {
      const auto tokens = Split(body, ',');
      if (dense_width && *dense_width != static_cast<int>(tokens.size())) {
        reader.Error("dense row has " + std::to_string(tokens.size()) +
                     " values, expected " + std::to_string(*dense_width));
      }
      dense_width = static_cast<int>(tokens.size());
      for (std::size_t c = 0; c < tokens.size(); ++c) {
        const auto val = TryParseDouble(tokens[c]);
        if (!val) reader.Error("invalid value '" + std::string(tokens[c]) + "'");
        row.indices.push_back(static_cast<int>(c));
        row.values.push_back(*val);
      }
      inferred_dim = std::max(inferred_dim, *dense_width);
    }
    if (!rows.emplace(node, std::move(row)).second) {
      reader.Error("duplicate row for node " + std::to_string(node));
    }
  }

  if (dim < 0) dim = inferred_dim;
  if (inferred_dim > dim) {
    Fail(ErrorCode::kData, std::string(source) + ": feature index exceeds dimension " +
                               std::to_string(dim));
  }
  if (num_nodes < 0) num_nodes = rows.empty() ? 0 : rows.rbegin()->first + 1;
  std::vector<int> missing;
  for (int i = 0; i < num_nodes; ++i) {
    if (!rows.contains(i)) missing.push_back(i);
  }
  if (!missing.empty()) {
    Fail(ErrorCode::kData, std::string(source) + ": missing feature rows for nodes " +
                               ListIds(missing));
  }
  if (!rows.empty() && rows.rbegin()->first >= num_nodes) {
    Fail(ErrorCode::kData, std::string(source) + ": row for node " +
                               std::to_string(rows.rbegin()->first) +
                               " outside [0, " + std::to_string(num_nodes) + ")");
  }
  NodeFeatures features(dim);
  for (const auto& [node, row] : rows) features.AppendRow(row.indices, row.values);
  return features;
}

void WriteFeatures(std::ostream& out, const NodeFeatures& features,
                   FeatureFormat format) {
  for (int r = 0; r < features.rows(); ++r) {
    out << r << '\t';
    if (format == FeatureFormat::kSparse) {
      const SparseRow row = features.Row(r);
      for (std::size_t t = 0; t < row.indices.size(); ++t) {
        if (t > 0) out << ' ';
        out << row.indices[t] << ':' << FormatDouble(row.values[t]);
      }
    } else {
      std::vector<double> dense(features.cols(), 0.0);
      const SparseRow row = features.Row(r);
      for (std::size_t t = 0; t < row.indices.size(); ++t) {
        dense[row.indices[t]] = row.values[t];
      }
      for (std::size_t c = 0; c < dense.size(); ++c) {
        if (c > 0) out << ',';
        out << FormatDouble(dense[c]);
      }
    }
    out << '\n';
  }
}

void WriteDenseRows(std::ostream& out, const Matrix& rows) {
  for (int r = 0; r < rows.rows(); ++r) {
    out << r << '\t';
    for (int c = 0; c < rows.cols(); ++c) {
      if (c > 0) out << ',';
      out << FormatDouble(rows(r, c));
    }
    out << '\n';
  }
}

NodeLabels ReadLabels(std::istream& in, int num_nodes, int num_classes,
                      std::string_view source) {
  LineReader reader(in, source);
  std::map<int, std::vector<int>> entries;
  int max_label = -1;
  while (reader.Next()) {
    const auto fields = Split(reader.line, '\t');
    if (fields.size() != 2) reader.Error("expected 'node<TAB>label[,label...]'");
    const int node = NodeId(reader, fields[0]);
    if (node >= num_nodes) {
      reader.Error("node " + std::to_string(node) + " outside [0, " +
                   std::to_string(num_nodes) + ")");
    }
    std::vector<int> classes;
    // An empty field is a labeled node with no positive class.
    if (!Trim(fields[1]).empty()) {
      for (std::string_view token : Split(fields[1], ',')) {
        const auto label = ParseInt(token);
        if (!label || *label < 0) {
          reader.Error("invalid label '" + std::string(token) + "'");
        }
        classes.push_back(*label);
        max_label = std::max(max_label, *label);
      }
    }
    if (!entries.emplace(node, std::move(classes)).second) {
      reader.Error("duplicate label line for node " + std::to_string(node));
    }
  }
  if (num_classes < 0) num_classes = std::max(1, max_label + 1);
  if (max_label >= num_classes) {
    Fail(ErrorCode::kInvalidLabel, std::string(source) + ": label " +
                                       std::to_string(max_label) +
                                       " outside [0, " +
                                       std::to_string(num_classes) + ")");
  }
  NodeLabels labels(num_nodes, num_classes);
  for (auto& [node, classes] : entries) labels.Set(node, std::move(classes));
  return labels;
}

void WriteLabels(std::ostream& out, const NodeLabels& labels) {
  for (int i = 0; i < labels.num_nodes(); ++i) {
    if (!labels.IsLabeled(i)) continue;
    out << i << '\t';
    const auto& classes = labels.classes(i);
    for (std::size_t t = 0; t < classes.size(); ++t) {
      if (t > 0) out << ',';
      out << classes[t];
    }
    out << '\n';
  }
}

}  // namespace ngm
