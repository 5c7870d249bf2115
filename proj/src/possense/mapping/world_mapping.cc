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

#include "possense/mapping/world_mapping.h"

#include "possense/model/errors.h"

namespace possense::mapping {

TrajectorySet MapTracklets(const std::vector<tracking::Tracklet>& tracklets,
                           const CameraModel& camera, const FrameClock& clock,
                           MappingStats* stats) {
  MappingStats local;
  std::vector<TrajectorySample> samples;
  for (const auto& tl : tracklets) {
    for (const auto& obs : tl.observations) {
      const PixelPoint anchor = GroundAnchorPixel(obs.box, obs.contour);
      WorldPoint w;
      try {
        w = camera.BackprojectToGround(anchor.u, anchor.v);
      } catch (const Error& e) {
        if (e.code() == ErrorCode::kHorizon) {
          ++local.dropped_horizon;
          continue;
        }
        if (e.code() == ErrorCode::kOutOfImage) {
          ++local.dropped_out_of_image;
          continue;
        }
        throw;
      }
      TrajectorySample s;
      s.track_id = tl.track_id;
      s.frame_index = obs.frame_index;
      s.time_s = clock.frame_time(obs.frame_index);
      s.x = w.x;
      s.y = w.y;
      s.box = obs.box;
      s.confidence = obs.confidence;
      s.vy_px = obs.state.dy_c;
      s.class_label = tl.class_label;
      s.contour = obs.contour;
      samples.push_back(std::move(s));
      ++local.mapped;
    }
  }
  if (stats) *stats = local;
  return GroupByTrack(samples);
}

}  // namespace possense::mapping
