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

#ifndef POSSENSE_MONITORING_TIMELINE_H_
#define POSSENSE_MONITORING_TIMELINE_H_

#include <map>
#include <vector>

#include <Eigen/Core>

#include "possense/grouping/group_detector.h"
#include "possense/grouping/grouping_io.h"
#include "possense/model/trajectory.h"

namespace possense::monitoring {

struct TimedPartition {
  int window_id = 0;
  double start = 0.0;
  double end = 0.0;
  grouping::Groups groups;
};

// Answers "which partition is in force at time t". When windows overlap the
// one that started last wins.
class PartitionTimeline {
 public:
  PartitionTimeline() = default;
  explicit PartitionTimeline(std::vector<TimedPartition> partitions);

  // Window k spans [k * stride, k * stride + window).
  static PartitionTimeline FromTable(const grouping::GroupingTable& table,
                                     double window_s, double stride_s);
  static PartitionTimeline FromResults(
      const std::vector<grouping::WindowResult>& results);

  const TimedPartition* At(double t) const;
  const std::vector<TimedPartition>& partitions() const { return parts_; }

 private:
  std::vector<TimedPartition> parts_;  // ordered by start
};

// Positions of every track observed at one frame.
struct FrameSnapshot {
  int frame_index = 0;
  double t = 0.0;
  std::map<int, Eigen::Vector2d> positions;
};
std::vector<FrameSnapshot> SnapshotsByFrame(const TrajectorySet& tracks);

// Groups in force at this frame restricted to present tracks; present tracks
// the partition does not mention become singletons.
grouping::Groups PresentGroups(const FrameSnapshot& snap,
                               const TimedPartition* partition);

}  // namespace possense::monitoring

#endif  // POSSENSE_MONITORING_TIMELINE_H_
