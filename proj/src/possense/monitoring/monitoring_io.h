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

#ifndef POSSENSE_MONITORING_MONITORING_IO_H_
#define POSSENSE_MONITORING_MONITORING_IO_H_

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "possense/monitoring/contacts.h"
#include "possense/monitoring/mask.h"
#include "possense/monitoring/violations.h"

namespace possense::monitoring {

// [{"zone_id","kind","polygon":[[x,y],...],"buffer_m","min_dwell_s"}]
// buffer_m and min_dwell_s fall back to the given defaults.
std::vector<FacilityZone> ReadZones(std::istream& in, double default_buffer_m,
                                    double default_min_dwell_s);
std::vector<FacilityZone> ReadZoneFile(const std::filesystem::path& path,
                                       double default_buffer_m,
                                       double default_min_dwell_s);

// Times are written as ISO-8601 UTC offsets from start_epoch_s.
void WriteViolations(std::ostream& out,
                     const std::vector<DistanceEvent>& events,
                     double start_epoch_s);
void WriteContacts(std::ostream& out, const std::vector<ContactEvent>& events,
                   double start_epoch_s);
void WriteMaskObservations(std::ostream& out,
                           const std::vector<MaskObservation>& obs,
                           double start_epoch_s);
void WriteDiameters(std::ostream& out, const std::vector<DiameterRow>& rows);

}  // namespace possense::monitoring

#endif  // POSSENSE_MONITORING_MONITORING_IO_H_
