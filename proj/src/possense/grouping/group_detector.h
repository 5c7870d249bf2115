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

#ifndef POSSENSE_GROUPING_GROUP_DETECTOR_H_
#define POSSENSE_GROUPING_GROUP_DETECTOR_H_

#include <vector>

#include "possense/grouping/affinity.h"
#include "possense/grouping/correlation_clustering.h"
#include "possense/grouping/features.h"
#include "possense/grouping/trajectory_window.h"

namespace possense::grouping {

struct GroupingParams {
  double window_s = 10.0;
  double stride_s = 10.0;
  double tau_s = 2.134;   // m
  double tau_v = 0.152;   // m/s
  double lambda_loc = 0.5;
  int granger_order = 2;
  double grid_res = 0.5;  // m
  double grid_pad = 5.0;  // m
  FeatureWeights weights;
  double negative_fraction = 0.1;
  Normalization normalization = Normalization::kReference;
  // Canonical pairs used by the reference normalization.
  double reference_near_m = 1.2;
  double reference_speed = 1.3;  // m/s
  double reference_fps = 7.0;
  int exact_limit = 12;

  void Validate() const;
  FrameFeatureBounds frame_bounds() const {
    return {0.0, tau_s * tau_s, 0.0, tau_v * tau_v};
  }
};

// Feature bounds from two straight parallel walks, one pair at the near
// offset (most affine) and one at tau_s (least affine). Granger bounds are
// log(1 + F) at F = 1 and F = 10.
FeatureRange ReferenceRange(const GroupingParams& params);

// Raw features and filter status for one pair.
PairFeatures ComputePairFeatures(const TrajectoryWindow& win, int i, int j,
                                 const GroupingParams& params);

struct WindowResult {
  int window_id = 0;
  double start = 0.0;
  double end = 0.0;
  std::vector<PairFeatures> pairs;
  AffinityMatrix affinity;
  GroupPartition partition;
  int granger_degenerate_pairs = 0;
};

WindowResult DetectGroups(const TrajectoryWindow& win,
                          const GroupingParams& params);
WindowResult DetectGroups(const TrajectoryWindow& win,
                          const GroupingParams& params,
                          const FeatureRange& reference);

std::vector<WindowResult> DetectGroupsAll(const TrajectorySet& tracks,
                                          const GroupingParams& params);

}  // namespace possense::grouping

#endif  // POSSENSE_GROUPING_GROUP_DETECTOR_H_
