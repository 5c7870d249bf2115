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

#ifndef POSSENSE_MONITORING_AGGREGATE_H_
#define POSSENSE_MONITORING_AGGREGATE_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "possense/model/trajectory.h"
#include "possense/monitoring/contacts.h"
#include "possense/monitoring/mask.h"

namespace possense::monitoring {

// "YYYY-MM-DDTHH:MM:SS[.fff]Z" <-> seconds since the Unix epoch (UTC).
double ParseIsoTime(const std::string& text);
std::string FormatIsoTime(double epoch_s);

enum class Bucket { kHour, kDay };
std::string BucketName(Bucket b);
Bucket ParseBucket(const std::string& text);

// Tidy row. Metrics: unique_tracks (per class), contact_events (per zone
// kind), mask_count (per label) and mask_rate (category "all"; value absent
// when nothing was labeled mask or no_mask).
struct AggregateRow {
  std::string bucket_start;
  std::string metric;
  std::string category;
  std::optional<double> value;
};

std::vector<AggregateRow> AggregateActivity(
    const TrajectorySet& tracks, const std::vector<ContactEvent>& contacts,
    const std::vector<MaskObservation>& masks, Bucket bucket,
    double start_epoch_s);

// bucket_start,metric,category,value
void WriteAggregate(std::ostream& out, const std::vector<AggregateRow>& rows);

}  // namespace possense::monitoring

#endif  // POSSENSE_MONITORING_AGGREGATE_H_
