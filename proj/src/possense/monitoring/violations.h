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

#ifndef POSSENSE_MONITORING_VIOLATIONS_H_
#define POSSENSE_MONITORING_VIOLATIONS_H_

#include <vector>

#include "possense/monitoring/geometry.h"
#include "possense/monitoring/timeline.h"

namespace possense::monitoring {

struct ViolationParams {
  double threshold_m = 2.0;
  double min_duration_s = 0.0;
  DistanceMode mode = DistanceMode::kMinPair;
  // Gaps up to this long do not split an interval (missed frames).
  double max_gap_s = 1.0;
  void Validate() const;
};

struct DistanceEvent {
  double start_s = 0.0;
  double end_s = 0.0;
  double duration_s = 0.0;  // end - start + one frame period
  std::vector<int> group_a;
  std::vector<int> group_b;
  double min_distance_m = 0.0;
  double min_time_s = 0.0;
  double threshold_m = 0.0;
  int frames = 0;
};

// Maximal intervals during which two distinct groups stay closer than the
// threshold. Distances inside a group never count.
std::vector<DistanceEvent> ScanViolations(const TrajectorySet& tracks,
                                          const PartitionTimeline& timeline,
                                          const ViolationParams& params,
                                          double frame_dt);

struct DiameterRow {
  int window_id = 0;
  std::vector<int> members;
  int frames = 0;  // frames with at least two members present
  double mean_m = 0.0;
  double min_m = 0.0;
  double max_m = 0.0;
};

// Per window and multi-member group.
std::vector<DiameterRow> MeasureDiameters(const TrajectorySet& tracks,
                                          const PartitionTimeline& timeline);

}  // namespace possense::monitoring

#endif  // POSSENSE_MONITORING_VIOLATIONS_H_
