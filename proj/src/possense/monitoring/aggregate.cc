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

#include "possense/monitoring/aggregate.h"

#include <cmath>
#include <cstdio>
#include <ctime>
#include <map>
#include <ostream>
#include <set>
#include <tuple>

#include "possense/model/errors.h"
#include "possense/model/format.h"

namespace possense::monitoring {

namespace {

double BucketSeconds(Bucket b) { return b == Bucket::kDay ? 86400.0 : 3600.0; }

}  // namespace

double ParseIsoTime(const std::string& text) {
  int y, mo, d, h, mi;
  double s;
  char z = 0;
  const int n = std::sscanf(text.c_str(), "%4d-%2d-%2dT%2d:%2d:%lf%c", &y, &mo,
                            &d, &h, &mi, &s, &z);
  if (n != 7 || z != 'Z' || mo < 1 || mo > 12 || d < 1 || d > 31 || h > 23 ||
      mi > 59 || s < 0.0 || s >= 61.0) {
    throw Error(ErrorCode::kConfig,
                "time '" + text + "' is not YYYY-MM-DDTHH:MM:SSZ");
  }
  std::tm tm{};
  tm.tm_year = y - 1900;
  tm.tm_mon = mo - 1;
  tm.tm_mday = d;
  tm.tm_hour = h;
  tm.tm_min = mi;
  tm.tm_sec = 0;
  return static_cast<double>(::timegm(&tm)) + s;
}

std::string FormatIsoTime(double epoch_s) {
  const double whole = std::floor(epoch_s);
  long long millis = std::llround((epoch_s - whole) * 1000.0);
  auto secs = static_cast<std::time_t>(whole);
  if (millis >= 1000) {
    millis -= 1000;
    ++secs;
  }
  std::tm tm{};
  ::gmtime_r(&secs, &tm);
  char buf[96];
  if (millis == 0) {
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02dZ",
                  tm.tm_year + 1900, tm.tm_mon + 1, tm.tm_mday, tm.tm_hour,
                  tm.tm_min, tm.tm_sec);
  } else {
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02d.%03lldZ",
                  tm.tm_year + 1900, tm.tm_mon + 1, tm.tm_mday, tm.tm_hour,
                  tm.tm_min, tm.tm_sec, millis);
  }
  return buf;
}

std::string BucketName(Bucket b) { return b == Bucket::kDay ? "day" : "hour"; }

Bucket ParseBucket(const std::string& text) {
  if (text == "hour") return Bucket::kHour;
  if (text == "day") return Bucket::kDay;
  throw Error(ErrorCode::kConfig, "monitoring.bucket must be 'hour' or 'day'");
}

std::vector<AggregateRow> AggregateActivity(
    const TrajectorySet& tracks, const std::vector<ContactEvent>& contacts,
    const std::vector<MaskObservation>& masks, Bucket bucket,
    double start_epoch_s) {
  const double size = BucketSeconds(bucket);
  auto bucket_of = [&](double t) {
    return static_cast<long long>(std::floor((start_epoch_s + t) / size));
  };
  std::map<long long, std::map<std::string, std::set<int>>> uniques;
  std::map<long long, std::map<std::string, int>> contact_counts;
  std::map<long long, std::map<std::string, int>> mask_counts;
  std::set<long long> buckets;

  for (const auto& [id, samples] : tracks) {
    for (const auto& s : samples) {
      const auto b = bucket_of(s.time_s);
      buckets.insert(b);
      uniques[b][std::string(ClassLabelName(s.class_label))].insert(id);
    }
  }
  for (const auto& e : contacts) {
    const auto b = bucket_of(e.enter_s);
    buckets.insert(b);
    ++contact_counts[b][ZoneKindName(e.kind)];
  }
  for (const auto& m : masks) {
    const auto b = bucket_of(m.time_s);
    buckets.insert(b);
    ++mask_counts[b][MaskLabelName(m.label)];
  }

  std::vector<AggregateRow> rows;
  for (const long long b : buckets) {
    const std::string start = FormatIsoTime(static_cast<double>(b) * size);
    for (const auto& [cls, ids] : uniques[b]) {
      rows.push_back({start, "unique_tracks", cls,
                      static_cast<double>(ids.size())});
    }
    for (const auto& [kind, n] : contact_counts[b]) {
      rows.push_back({start, "contact_events", kind, static_cast<double>(n)});
    }
    auto& mc = mask_counts[b];
    for (const auto& [label, n] : mc) {
      rows.push_back({start, "mask_count", label, static_cast<double>(n)});
    }
    const int with = mc.count("mask") ? mc["mask"] : 0;
    const int without = mc.count("no_mask") ? mc["no_mask"] : 0;
    std::optional<double> rate;
    if (with + without > 0) {
      rate = static_cast<double>(with) / static_cast<double>(with + without);
    }
    rows.push_back({start, "mask_rate", "all", rate});
  }
  return rows;
}

void WriteAggregate(std::ostream& out, const std::vector<AggregateRow>& rows) {
  out << "bucket_start,metric,category,value\n";
  for (const auto& r : rows) {
    out << r.bucket_start << ',' << r.metric << ',' << r.category << ',';
    if (r.value) out << FormatDouble(*r.value);
    out << '\n';
  }
}

}  // namespace possense::monitoring
