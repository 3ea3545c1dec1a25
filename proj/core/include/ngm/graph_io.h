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

// Tab-separated file formats:
//   edges     u<TAB>v[<TAB>w]
//   features  node<TAB>v1,v2,...            (dense)
//             node<TAB>idx:val idx:val ...  (sparse)
//   labels    node<TAB>label[,label...]
// Blank lines and lines starting with '#' are ignored.

#ifndef NGM_GRAPH_IO_H_
#define NGM_GRAPH_IO_H_

#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "ngm/graph.h"
#include "ngm/matrix.h"

namespace ngm {

// Shortest text that parses back to the same double.
std::string FormatDouble(double value);
double ParseDouble(std::string_view text);

// Throws kParse with "<source>:<line>: ..." on malformed lines.
std::vector<Edge> ReadEdgeList(std::istream& in,
                               std::string_view source = "<edges>");

// `num_nodes` < 0 infers max id + 1.
Graph ReadGraph(std::istream& in, int num_nodes = -1,
                std::string_view source = "<edges>");
void WriteEdgeList(std::ostream& out, const Graph& graph);

enum class FeatureFormat { kDense, kSparse };

// Requires one row for every node in [0, num_nodes); `num_nodes` < 0 infers
// max id + 1. Missing rows raise kData listing the absent ids. `dim` < 0
// infers the dimension (dense width or max sparse index + 1).
NodeFeatures ReadFeatures(std::istream& in, int num_nodes = -1, int dim = -1,
                          std::string_view source = "<features>");
void WriteFeatures(std::ostream& out, const NodeFeatures& features,
                   FeatureFormat format);

// Dense rows written as node<TAB>v1,v2,... (used for label distributions).
void WriteDenseRows(std::ostream& out, const Matrix& rows);

// Nodes absent from the file stay unlabeled. `num_classes` < 0 infers max
// label + 1.
NodeLabels ReadLabels(std::istream& in, int num_nodes, int num_classes = -1,
                      std::string_view source = "<labels>");
void WriteLabels(std::ostream& out, const NodeLabels& labels);

}  // namespace ngm

#endif  // NGM_GRAPH_IO_H_
