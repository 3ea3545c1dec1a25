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

#include "ngm/matrix.h"

#include <string>

#include "ngm/error.h"

namespace ngm {

Matrix::Matrix(int rows, int cols, double fill)
    : rows_(rows), cols_(cols) {
  if (rows < 0 || cols < 0) {
    Fail(ErrorCode::kShape, "negative matrix dimension");
  }
  data_.assign(static_cast<std::size_t>(rows) * cols, fill);
}

Matrix Matrix::FromRows(const std::vector<std::vector<double>>& rows) {
  const int n = static_cast<int>(rows.size());
  const int d = n == 0 ? 0 : static_cast<int>(rows.front().size());
  Matrix m(n, d);
  for (int r = 0; r < n; ++r) {
    if (static_cast<int>(rows[r].size()) != d) {
      Fail(ErrorCode::kShape, "ragged row " + std::to_string(r) +
                                  ": expected " + std::to_string(d) +
                                  " columns, got " +
                                  std::to_string(rows[r].size()));
    }
    for (int c = 0; c < d; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

}  // namespace ngm
