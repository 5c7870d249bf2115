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

#ifndef POSSENSE_MONITORING_CONTACTS_H_
#define POSSENSE_MONITORING_CONTACTS_H_

#include <string>
#include <vector>

#include "possense/mapping/camera_model.h"
#include "possense/model/trajectory.h"
#include "possense/monitoring/geometry.h"

namespace possense::monitoring {

enum class ZoneKind { kBench, kFence, kTrashcan, kSteps, kOther };
std::string ZoneKindName(ZoneKind k);
ZoneKind ParseZoneKind(const std::string& text);
// Kinds where people sit, so the posture cues apply.
bool ZoneAllowsSitting(ZoneKind k);

struct FacilityZone {
  std::string zone_id;
  ZoneKind kind = ZoneKind::kOther;
  Polygon polygon;
  double buffer_m = 0.4;
  double min_dwell_s = 5.0;
  void Validate() const;
};

struct ContactParams {
  double aspect_ratio_max_sit = 1.8;
  double max_gap_s = 1.0;
  void Validate() const;
};

struct ContactEvent {
  int track_id = 0;
  std::string zone_id;
  ZoneKind kind = ZoneKind::kOther;
  double enter_s = 0.0;
  double exit_s = 0.0;
  double dwell_s = 0.0;  // exit - enter + one frame period
  bool in_buffer = false;  // some sample was in the buffer ring only
  bool aspect_ratio_sit = false;
  bool contour_overlap = false;
  bool sitting = false;  // either cue, sitting kinds only
};

// Is p inside the polygon grown by buffer_m?
bool InsideZone(const Eigen::Vector2d& p, const FacilityZone& zone);

// When a camera is given, a detection contour overlapping the zone's image
// footprint adds the overlap cue.
std::vector<ContactEvent> DetectContacts(
    const TrajectorySet& tracks, const std::vector<FacilityZone>& zones,
    const ContactParams& params, double frame_dt,
    const mapping::CameraModel* camera = nullptr);

}  // namespace possense::monitoring

#endif  // POSSENSE_MONITORING_CONTACTS_H_
