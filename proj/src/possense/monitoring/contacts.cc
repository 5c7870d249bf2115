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

#include "possense/monitoring/contacts.h"

#include <algorithm>
#include <optional>

#include "possense/model/errors.h"

namespace possense::monitoring {

namespace {

struct Open {
  double enter = 0.0;
  double last = 0.0;
  bool in_buffer = false;
  bool aspect = false;
  bool overlap = false;
};

// Zone outline in pixels, or nullopt if any vertex is behind the camera.
std::optional<Polygon> ImageFootprint(const FacilityZone& zone,
                                      const mapping::CameraModel& camera) {
  Polygon out;
  for (const auto& v : zone.polygon) {
    try {
      const PixelPoint px = camera.Project({v.x(), v.y(), 0.0});
      out.emplace_back(px.u, px.v);
    } catch (const Error&) {
      return std::nullopt;
    }
  }
  return out;
}

bool ContourOverlaps(const std::vector<PixelPoint>& contour,
                     const Polygon& footprint) {
  Polygon shape;
  for (const auto& p : contour) shape.emplace_back(p.u, p.v);
  for (const auto& p : shape) {
    if (PointInPolygon(p, footprint)) return true;
  }
  if (shape.size() >= 3) {
    for (const auto& p : footprint) {
      if (PointInPolygon(p, shape)) return true;
    }
  }
  return false;
}

}  // namespace

std::string ZoneKindName(ZoneKind k) {
  switch (k) {
    case ZoneKind::kBench: return "bench";
    case ZoneKind::kFence: return "fence";
    case ZoneKind::kTrashcan: return "trashcan";
    case ZoneKind::kSteps: return "steps";
    case ZoneKind::kOther: return "other";
  }
  return "other";
}

ZoneKind ParseZoneKind(const std::string& text) {
  for (ZoneKind k : {ZoneKind::kBench, ZoneKind::kFence, ZoneKind::kTrashcan,
                     ZoneKind::kSteps, ZoneKind::kOther}) {
    if (ZoneKindName(k) == text) return k;
  }
  throw Error(ErrorCode::kParse, "unknown zone kind '" + text + "'");
}

bool ZoneAllowsSitting(ZoneKind k) {
  return k == ZoneKind::kBench || k == ZoneKind::kSteps;
}

void FacilityZone::Validate() const {
  if (!IsSimplePolygon(polygon)) {
    throw Error(ErrorCode::kParse,
                "zone '" + zone_id + "' polygon must be simple with >= 3 vertices");
  }
  if (!(buffer_m >= 0.0) || !(min_dwell_s >= 0.0)) {
    throw Error(ErrorCode::kParse,
                "zone '" + zone_id + "' buffer_m and min_dwell_s must be >= 0");
  }
}

void ContactParams::Validate() const {
  if (!(aspect_ratio_max_sit > 0.0)) {
    throw Error(ErrorCode::kConfig,
                "monitoring.aspect_ratio_max_sit must be > 0");
  }
  if (!(max_gap_s >= 0.0)) {
    throw Error(ErrorCode::kConfig, "monitoring.max_gap_s must be >= 0");
  }
}

bool InsideZone(const Eigen::Vector2d& p, const FacilityZone& zone) {
  return PointInPolygon(p, zone.polygon) ||
         DistanceToBoundary(p, zone.polygon) <= zone.buffer_m;
}

std::vector<ContactEvent> DetectContacts(
    const TrajectorySet& tracks, const std::vector<FacilityZone>& zones,
    const ContactParams& params, double frame_dt,
    const mapping::CameraModel* camera) {
  params.Validate();
  std::vector<ContactEvent> events;
  const double gap = params.max_gap_s + frame_dt + 1e-9;
  for (const auto& zone : zones) {
    zone.Validate();
    const bool sit_kind = ZoneAllowsSitting(zone.kind);
    std::optional<Polygon> footprint;
    if (camera && sit_kind) footprint = ImageFootprint(zone, *camera);
    for (const auto& [id, samples] : tracks) {
      std::optional<Open> cur;
      auto close = [&](const Open& o) {
        ContactEvent e;
        e.track_id = id;
        e.zone_id = zone.zone_id;
        e.kind = zone.kind;
        e.enter_s = o.enter;
        e.exit_s = o.last;
        e.dwell_s = o.last - o.enter + frame_dt;
        e.in_buffer = o.in_buffer;
        e.aspect_ratio_sit = o.aspect;
        e.contour_overlap = o.overlap;
        e.sitting = o.aspect || o.overlap;
        if (e.dwell_s >= zone.min_dwell_s - 1e-9) events.push_back(e);
      };
      for (const auto& s : samples) {
        const Eigen::Vector2d p(s.x, s.y);
        if (!InsideZone(p, zone)) continue;
        if (cur && s.time_s - cur->last > gap) {
          close(*cur);
          cur.reset();
        }
        if (!cur) cur = Open{s.time_s, s.time_s};
        cur->last = s.time_s;
        if (!PointInPolygon(p, zone.polygon)) cur->in_buffer = true;
        if (sit_kind) {
          if (s.box.width > 0.0 &&
              s.box.height / s.box.width < params.aspect_ratio_max_sit) {
            cur->aspect = true;
          }
          if (footprint && s.contour && ContourOverlaps(*s.contour, *footprint)) {
            cur->overlap = true;
          }
        }
      }
      if (cur) close(*cur);
    }
  }
  std::sort(events.begin(), events.end(),
            [](const ContactEvent& a, const ContactEvent& b) {
              if (a.enter_s != b.enter_s) return a.enter_s < b.enter_s;
              if (a.track_id != b.track_id) return a.track_id < b.track_id;
              return a.zone_id < b.zone_id;
            });
  return events;
}

}  // namespace possense::monitoring
