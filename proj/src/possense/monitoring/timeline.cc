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

#include "possense/monitoring/timeline.h"

#include <algorithm>
#include <set>

namespace possense::monitoring {

namespace {
constexpr double kSlack = 1e-9;
}  // namespace

PartitionTimeline::PartitionTimeline(std::vector<TimedPartition> partitions)
    : parts_(std::move(partitions)) {
  std::stable_sort(parts_.begin(), parts_.end(),
                   [](const TimedPartition& a, const TimedPartition& b) {
                     return a.start < b.start;
                   });
}

PartitionTimeline PartitionTimeline::FromTable(
    const grouping::GroupingTable& table, double window_s, double stride_s) {
  std::vector<TimedPartition> parts;
  for (const auto& [k, groups] : table) {
    parts.push_back({k, k * stride_s, k * stride_s + window_s, groups});
  }
  return PartitionTimeline(std::move(parts));
}

PartitionTimeline PartitionTimeline::FromResults(
    const std::vector<grouping::WindowResult>& results) {
  std::vector<TimedPartition> parts;
  for (const auto& r : results) {
    parts.push_back({r.window_id, r.start, r.end, r.partition.groups});
  }
  return PartitionTimeline(std::move(parts));
}

const TimedPartition* PartitionTimeline::At(double t) const {
  const TimedPartition* hit = nullptr;
  for (std::size_t k = 0; k < parts_.size(); ++k) {
    const auto& p = parts_[k];
    const bool last = k + 1 == parts_.size();
    const bool inside = t >= p.start - kSlack &&
                        (last ? t <= p.end + kSlack : t < p.end - kSlack);
    if (inside) hit = &p;
  }
  return hit;
}

std::vector<FrameSnapshot> SnapshotsByFrame(const TrajectorySet& tracks) {
  std::map<int, FrameSnapshot> frames;
  for (const auto& [id, samples] : tracks) {
    for (const auto& s : samples) {
      auto& snap = frames[s.frame_index];
      snap.frame_index = s.frame_index;
      snap.t = s.time_s;
      snap.positions[id] = Eigen::Vector2d(s.x, s.y);
    }
  }
  std::vector<FrameSnapshot> out;
  out.reserve(frames.size());
  for (auto& [f, snap] : frames) out.push_back(std::move(snap));
  return out;
}

grouping::Groups PresentGroups(const FrameSnapshot& snap,
                               const TimedPartition* partition) {
  grouping::Groups out;
  std::set<int> covered;
  if (partition) {
    for (const auto& g : partition->groups) {
      std::vector<int> present;
      for (int id : g) {
        if (snap.positions.count(id)) present.push_back(id);
      }
      if (present.empty()) continue;
      covered.insert(present.begin(), present.end());
      out.push_back(std::move(present));
    }
  }
  for (const auto& [id, p] : snap.positions) {
    if (!covered.count(id)) out.push_back({id});
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace possense::monitoring
