// Copyright 2026 The possense Authors.
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

#include "possense/tracking/hungarian.h"

#include <algorithm>
#include <limits>

#include "possense/model/errors.h"

namespace possense::tracking {

namespace {

// Solves rows <= cols. Returns col index per row.
std::vector<int> SolveWide(const Eigen::MatrixXd& a) {
  const int n = static_cast<int>(a.rows());
  const int m = static_cast<int>(a.cols());
  constexpr double kInf = std::numeric_limits<double>::infinity();
  // 1-based potentials; p[j] is the row matched to column j (0 = none).
  std::vector<double> u(n + 1, 0.0), v(m + 1, 0.0);
  std::vector<int> p(m + 1, 0), way(m + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(m + 1, kInf);
    std::vector<char> used(m + 1, false);
    do {
      used[j0] = true;
      const int i0 = p[j0];
      double delta = kInf;
      int j1 = 0;
      for (int j = 1; j <= m; ++j) {
        if (used[j]) continue;
        const double cur = a(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= m; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> row_to_col(n, -1);
  for (int j = 1; j <= m; ++j) {
    if (p[j] != 0) row_to_col[p[j] - 1] = j - 1;
  }
  return row_to_col;
}

}  // namespace

Assignment HungarianAssign(const Eigen::MatrixXd& cost, double infeasible) {
  Assignment result;
  const int rows = static_cast<int>(cost.rows());
  const int cols = static_cast<int>(cost.cols());
  if (!cost.allFinite()) {
    throw Error(ErrorCode::kInvalidArgument,
                "assignment costs must be finite; use the infeasible value");
  }
  std::vector<int> row_to_col(rows, -1);
  if (rows > 0 && cols > 0) {
    if (rows <= cols) {
      row_to_col = SolveWide(cost);
    } else {
      const auto col_to_row = SolveWide(cost.transpose());
      for (int c = 0; c < cols; ++c) {
        if (col_to_row[c] >= 0) row_to_col[col_to_row[c]] = c;
      }
    }
  }
  std::vector<char> col_used(cols, false);
  for (int r = 0; r < rows; ++r) {
    const int c = row_to_col[r];
    if (c >= 0 && cost(r, c) < infeasible) {
      result.matches.emplace_back(r, c);
      result.total_cost += cost(r, c);
      col_used[c] = true;
    } else {
      result.unmatched_rows.push_back(r);
    }
  }
  for (int c = 0; c < cols; ++c) {
    if (!col_used[c]) result.unmatched_cols.push_back(c);
  }
  return result;
}

}  // namespace possense::tracking
