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

#ifndef POSSENSE_GROUPING_FEATURES_H_
#define POSSENSE_GROUPING_FEATURES_H_

#include <optional>
#include <span>

#include <Eigen/Core>

#include "possense/grouping/trajectory_window.h"

namespace possense::grouping {

// Min-max bounds for the two frame-feature terms.
struct FrameFeatureBounds {
  double dist2_min = 0.0;
  double dist2_max = 1.0;
  double vel2_min = 0.0;
  double vel2_max = 1.0;
};

// lambda * N(|si - sj|^2) + (1 - lambda) * N(|vi - vj|^2), or nullopt when
// the pair is too far apart (tau_s) or moving too differently (tau_v).
std::optional<double> FrameFeature(const Eigen::Vector2d& si,
                                   const Eigen::Vector2d& sj,
                                   const Eigen::Vector2d& vi,
                                   const Eigen::Vector2d& vj,
                                   const FrameFeatureBounds& bounds,
                                   double lambda_loc, double tau_s,
                                   double tau_v);

// Hall's proxemic zones as an equal-weight mixture of isotropic Gaussians.
inline constexpr double kProxemicSigmas[3] = {0.5, 1.2, 3.7};
double ProxemicsGmm(const Eigen::Vector2d& si, const Eigen::Vector2d& sj);

// Mean mixture likelihood over co-occurring frames; nullopt when the pair
// never shares a frame.
std::optional<double> ProxemicsF1(const TrajectoryWindow& win, int i, int j);

struct DtwResult {
  double gamma = 0.0;  // cumulative cost at (M, N)
  double f2 = 0.0;     // gamma / max(M, N)
};
DtwResult DtwDistance(std::span<const Eigen::Vector2d> a,
                      std::span<const Eigen::Vector2d> b);
DtwResult DtwF2(const TrajectoryWindow& win, int i, int j);

}  // namespace possense::grouping

#endif  // POSSENSE_GROUPING_FEATURES_H_
