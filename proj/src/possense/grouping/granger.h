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

#ifndef POSSENSE_GROUPING_GRANGER_H_
#define POSSENSE_GROUPING_GRANGER_H_

#include <span>

#include <Eigen/Core>

#include "possense/grouping/trajectory_window.h"

namespace possense::grouping {

// F statistic for "cause helps predict effect". Both inputs are aligned
// position sequences; the regressions run on first differences with lags
// 1..order and an intercept. The x and y axes are pooled into one test with
// (k*order, k*(n - 2*order - 1)) degrees of freedom, k being the number of
// axes whose regression is full rank.
struct GrangerTest {
  double f = 0.0;
  int dof_num = 0;
  int dof_den = 0;
  bool degenerate = true;
};
GrangerTest GrangerF(std::span<const Eigen::Vector2d> cause,
                     std::span<const Eigen::Vector2d> effect, int order);

struct GrangerResult {
  double score = 0.0;  // log(1 + max(F_ij, F_ji))
  GrangerTest ij;
  GrangerTest ji;
  bool degenerate = true;
};
GrangerResult GrangerScore(std::span<const Eigen::Vector2d> a,
                           std::span<const Eigen::Vector2d> b, int order);

// Runs on the co-occurring frames of i and j.
GrangerResult GrangerF3(const TrajectoryWindow& win, int i, int j, int order);

// Smallest aligned length for which the unrestricted fit has a residual
// degree of freedom.
int GrangerMinFrames(int order);

}  // namespace possense::grouping

#endif  // POSSENSE_GROUPING_GRANGER_H_
