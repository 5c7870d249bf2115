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

#ifndef POSSENSE_TRACKING_HUNGARIAN_H_
#define POSSENSE_TRACKING_HUNGARIAN_H_

#include <utility>
#include <vector>

#include <Eigen/Core>

#include "possense/tracking/distances.h"

namespace possense::tracking {

struct Assignment {
  // (row, col) pairs in ascending row order, infeasible pairs removed.
  std::vector<std::pair<int, int>> matches;
  std::vector<int> unmatched_rows;
  std::vector<int> unmatched_cols;
  // Sum over `matches`.
  double total_cost = 0.0;
};

// Minimum-cost assignment of min(R, C) pairs (shortest augmenting path with
// dual potentials, O(n^2 m)). Pairs whose cost is >= `infeasible` are
// stripped from the result and reported unmatched.
Assignment HungarianAssign(const Eigen::MatrixXd& cost,
                           double infeasible = kInfeasibleCost);

}  // namespace possense::tracking

#endif  // POSSENSE_TRACKING_HUNGARIAN_H_
