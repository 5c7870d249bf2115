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

#include "possense/monitoring/violations.h"

#include <algorithm>
#include <limits>
#include <map>
#include <utility>

#include "possense/model/errors.h"

namespace possense::monitoring {

namespace {

using GroupKey = std::pair<std::vector<int>, std::vector<int>>;

struct OpenInterval {
  double start = 0.0;
  double last = 0.0;
  double min_distance = std::numeric_limits<double>::infinity();
  double min_time = 0.0;
  int frames = 0;
};

std::vector<Eigen::Vector2d> Points(const FrameSnapshot& snap,
                                    const std::vector<int>& ids) {
  std::vector<Eigen::Vector2d> pts;
  for (int id : ids) pts.push_back(snap.positions.at(id));
  return pts;
}

}  // namespace

void ViolationParams::Validate() const {
  if (!(threshold_m > 0.0)) {
    throw Error(ErrorCode::kConfig, "monitoring.threshold_m must be > 0");
  }
  if (!(min_duration_s >= 0.0)) {
    throw Error(ErrorCode::kConfig, "monitoring.min_duration_s must be >= 0");
  }
  if (!(max_gap_s >= 0.0)) {
    throw Error(ErrorCode::kConfig, "monitoring.max_gap_s must be >= 0");
  }
}

std::vector<DistanceEvent> ScanViolations(const TrajectorySet& tracks,
                                          const PartitionTimeline& timeline,
                                          const ViolationParams& params,
                                          double frame_dt) {
  params.Validate();
  std::vector<DistanceEvent> events;
  std::map<GroupKey, OpenInterval> open;
  auto close = [&](const GroupKey& key, const OpenInterval& iv) {
    DistanceEvent e;
    e.start_s = iv.start;
    e.end_s = iv.last;
    e.duration_s = iv.last - iv.start + frame_dt;
    e.group_a = key.first;
    e.group_b = key.second;
    e.min_distance_m = iv.min_distance;
    e.min_time_s = iv.min_time;
    e.threshold_m = params.threshold_m;
    e.frames = iv.frames;
    if (e.duration_s >= params.min_duration_s - 1e-9) {
      events.push_back(std::move(e));
    }
  };
  const double gap = params.max_gap_s + frame_dt + 1e-9;
  for (const auto& snap : SnapshotsByFrame(tracks)) {
    // Retire intervals that went quiet for too long.
    for (auto it = open.begin(); it != open.end();) {
      if (snap.t - it->second.last > gap) {
        close(it->first, it->second);
        it = open.erase(it);
      } else {
        ++it;
      }
    }
    const auto groups = PresentGroups(snap, timeline.At(snap.t));
    for (std::size_t a = 0; a < groups.size(); ++a) {
      const auto pa = Points(snap, groups[a]);
      for (std::size_t b = a + 1; b < groups.size(); ++b) {
        const auto pb = Points(snap, groups[b]);
        const double d = InterGroupDistance(pa, pb, params.mode);
        if (!(d < params.threshold_m)) continue;
        GroupKey key{groups[a], groups[b]};
        auto [it, fresh] = open.try_emplace(key);
        OpenInterval& iv = it->second;
        if (fresh) iv.start = snap.t;
        iv.last = snap.t;
        ++iv.frames;
        if (d < iv.min_distance) {
          iv.min_distance = d;
          iv.min_time = snap.t;
        }
      }
    }
  }
  for (const auto& [key, iv] : open) close(key, iv);
  std::sort(events.begin(), events.end(),
            [](const DistanceEvent& x, const DistanceEvent& y) {
              if (x.start_s != y.start_s) return x.start_s < y.start_s;
              if (x.group_a != y.group_a) return x.group_a < y.group_a;
              return x.group_b < y.group_b;
            });
  return events;
}

std::vector<DiameterRow> MeasureDiameters(const TrajectorySet& tracks,
                                          const PartitionTimeline& timeline) {
  std::map<std::pair<int, std::vector<int>>, DiameterRow> rows;
  for (const auto& snap : SnapshotsByFrame(tracks)) {
    const TimedPartition* part = timeline.At(snap.t);
    if (!part) continue;
    for (const auto& g : part->groups) {
      if (g.size() < 2) continue;
      std::vector<Eigen::Vector2d> pts;
      for (int id : g) {
        const auto it = snap.positions.find(id);
        if (it != snap.positions.end()) pts.push_back(it->second);
      }
      if (pts.size() < 2) continue;
      const double d = GroupDiameter(pts);
      auto [it, fresh] = rows.try_emplace({part->window_id, g});
      DiameterRow& r = it->second;
      if (fresh) {
        r.window_id = part->window_id;
        r.members = g;
        r.min_m = d;
        r.max_m = d;
      }
      r.mean_m += d;
      r.min_m = std::min(r.min_m, d);
      r.max_m = std::max(r.max_m, d);
      ++r.frames;
    }
  }
  std::vector<DiameterRow> out;
  for (auto& [key, r] : rows) {
    r.mean_m /= r.frames;
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace possense::monitoring
