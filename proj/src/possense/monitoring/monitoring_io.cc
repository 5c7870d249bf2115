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

#include "possense/monitoring/monitoring_io.h"

#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <string>

#include <json.hpp>

#include "possense/model/errors.h"
#include "possense/model/format.h"
#include "possense/monitoring/aggregate.h"

namespace possense::monitoring {

namespace {

std::string Ids(const std::vector<int>& ids) {
  std::string s;
  for (std::size_t k = 0; k < ids.size(); ++k) {
    if (k > 0) s += ' ';
    s += std::to_string(ids[k]);
  }
  return s;
}

double NumberOr(const nlohmann::json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number()) {
    throw Error(ErrorCode::kParse, std::string("zone field '") + key +
                                       "' must be a number");
  }
  return j[key].get<double>();
}

}  // namespace

std::vector<FacilityZone> ReadZones(std::istream& in, double default_buffer_m,
                                    double default_min_dwell_s) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("zones: ") + e.what());
  }
  if (!doc.is_array()) throw Error(ErrorCode::kParse, "zones must be an array");
  std::vector<FacilityZone> zones;
  std::set<std::string> ids;
  for (const auto& z : doc) {
    if (!z.is_object() || !z.contains("zone_id") || !z.contains("kind") ||
        !z.contains("polygon")) {
      throw Error(ErrorCode::kParse,
                  "zone needs 'zone_id', 'kind' and 'polygon'");
    }
    FacilityZone zone;
    zone.zone_id = z["zone_id"].is_string() ? z["zone_id"].get<std::string>()
                                            : z["zone_id"].dump();
    if (!ids.insert(zone.zone_id).second) {
      throw Error(ErrorCode::kParse, "duplicate zone_id '" + zone.zone_id + "'");
    }
    if (!z["kind"].is_string()) {
      throw Error(ErrorCode::kParse, "zone kind must be a string");
    }
    zone.kind = ParseZoneKind(z["kind"].get<std::string>());
    for (const auto& v : z["polygon"]) {
      if (!v.is_array() || v.size() != 2 || !v[0].is_number() ||
          !v[1].is_number()) {
        throw Error(ErrorCode::kParse,
                    "zone '" + zone.zone_id + "' vertices must be [x, y]");
      }
      zone.polygon.emplace_back(v[0].get<double>(), v[1].get<double>());
    }
    zone.buffer_m = NumberOr(z, "buffer_m", default_buffer_m);
    zone.min_dwell_s = NumberOr(z, "min_dwell_s", default_min_dwell_s);
    zone.Validate();
    zones.push_back(std::move(zone));
  }
  return zones;
}

std::vector<FacilityZone> ReadZoneFile(const std::filesystem::path& path,
                                       double default_buffer_m,
                                       double default_min_dwell_s) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path.string());
  return ReadZones(in, default_buffer_m, default_min_dwell_s);
}

void WriteViolations(std::ostream& out,
                     const std::vector<DistanceEvent>& events,
                     double start_epoch_s) {
  out << "kind,start,end,duration_s,group_a,group_b,min_distance_m,"
         "min_time,threshold_m,frames\n";
  for (const auto& e : events) {
    out << "inter_group_violation," << FormatIsoTime(start_epoch_s + e.start_s)
        << ',' << FormatIsoTime(start_epoch_s + e.end_s) << ','
        << FormatFixed(e.duration_s, 3) << ',' << Ids(e.group_a) << ','
        << Ids(e.group_b) << ',' << FormatFixed(e.min_distance_m, 4) << ','
        << FormatIsoTime(start_epoch_s + e.min_time_s) << ','
        << FormatDouble(e.threshold_m) << ',' << e.frames << '\n';
  }
}

void WriteContacts(std::ostream& out, const std::vector<ContactEvent>& events,
                   double start_epoch_s) {
  out << "track_id,zone_id,kind,enter,exit,dwell_s,in_buffer,"
         "aspect_ratio_sit,contour_overlap,sitting\n";
  for (const auto& e : events) {
    out << e.track_id << ',' << e.zone_id << ',' << ZoneKindName(e.kind)
        << ',' << FormatIsoTime(start_epoch_s + e.enter_s) << ','
        << FormatIsoTime(start_epoch_s + e.exit_s) << ','
        << FormatFixed(e.dwell_s, 3) << ',' << int{e.in_buffer} << ','
        << int{e.aspect_ratio_sit} << ',' << int{e.contour_overlap} << ','
        << int{e.sitting} << '\n';
  }
}

void WriteMaskObservations(std::ostream& out,
                           const std::vector<MaskObservation>& obs,
                           double start_epoch_s) {
  out << "track_id,frame,time,crop_left,crop_top,crop_width,crop_height,"
         "heading_toward_camera,label\n";
  for (const auto& o : obs) {
    out << o.track_id << ',' << o.frame_index << ','
        << FormatIsoTime(start_epoch_s + o.time_s) << ','
        << FormatDouble(o.crop.left) << ',' << FormatDouble(o.crop.top) << ','
        << FormatDouble(o.crop.width) << ',' << FormatDouble(o.crop.height)
        << ',' << int{o.heading_toward_camera} << ','
        << MaskLabelName(o.label) << '\n';
  }
}

void WriteDiameters(std::ostream& out, const std::vector<DiameterRow>& rows) {
  out << "window,members,frames,diameter_mean_m,diameter_min_m,"
         "diameter_max_m\n";
  for (const auto& r : rows) {
    out << r.window_id << ',' << Ids(r.members) << ',' << r.frames << ','
        << FormatFixed(r.mean_m, 4) << ',' << FormatFixed(r.min_m, 4) << ','
        << FormatFixed(r.max_m, 4) << '\n';
  }
}

}  // namespace possense::monitoring
