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

#ifndef POSSENSE_GROUPING_PATH_CONVERGENCE_H_
#define POSSENSE_GROUPING_PATH_CONVERGENCE_H_

#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "possense/grouping/trajectory_window.h"

namespace possense::grouping {

struct HeatGrid {
  Eigen::Vector2d origin = Eigen::Vector2d::Zero();  // lower-left corner
  double resolution = 0.5;
};

// Sparse occupancy map: (cell key, weight) pairs sorted by key.
using HeatMap = std::vector<std::pair<std::int64_t, double>>;

// Grid anchored at the window's bounding box (observed and extrapolated
// positions of every member) padded by pad_m.
HeatGrid WindowGrid(const TrajectoryWindow& win, double resolution,
                    double pad_m);

// Observed positions of one member followed by its linear extrapolation
// from the last sample to the window end, at the member's median sampling
// interval.
std::vector<Eigen::Vector2d> ExtrapolatedPath(
    const std::vector<WindowSample>& samples, double window_end);

// Gaussian splat (sigma = grid resolution, truncated at 3 sigma).
HeatMap Rasterize(const std::vector<Eigen::Vector2d>& path,
                  const HeatGrid& grid);

// Cosine similarity in [0, 1]; 0 when either map is empty.
double HeatMapSimilarity(const HeatMap& a, const HeatMap& b);

// Returns 0 when the pair co-occurs on fewer than two frames.
double PathConvergenceF4(const TrajectoryWindow& win, int i, int j,
                         double grid_res, double pad_m = 5.0);

}  // namespace possense::grouping

#endif  // POSSENSE_GROUPING_PATH_CONVERGENCE_H_
