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

#ifndef POSSENSE_MAPPING_WORLD_MAPPING_H_
#define POSSENSE_MAPPING_WORLD_MAPPING_H_

#include <vector>

#include "possense/mapping/camera_model.h"
#include "possense/model/trajectory.h"
#include "possense/model/types.h"
#include "possense/tracking/tracker.h"

namespace possense::mapping {

struct MappingStats {
  int mapped = 0;
  int dropped_horizon = 0;
  int dropped_out_of_image = 0;
};

// Back-projects the ground anchor of every tracked observation onto the
// ground plane. Observations above the horizon or outside the image are
// dropped and counted.
TrajectorySet MapTracklets(const std::vector<tracking::Tracklet>& tracklets,
                           const CameraModel& camera, const FrameClock& clock,
                           MappingStats* stats = nullptr);

}  // namespace possense::mapping

#endif  // POSSENSE_MAPPING_WORLD_MAPPING_H_
