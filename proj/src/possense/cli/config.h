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

#ifndef POSSENSE_CLI_CONFIG_H_
#define POSSENSE_CLI_CONFIG_H_

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "possense/grouping/group_detector.h"
#include "possense/model/errors.h"
#include "possense/model/types.h"
#include "possense/monitoring/aggregate.h"
#include "possense/monitoring/contacts.h"
#include "possense/monitoring/mask.h"
#include "possense/monitoring/violations.h"
#include "possense/tracking/tracker.h"

namespace possense::cli {

// Configuration problem tied to one key.
class ConfigError : public Error {
 public:
  ConfigError(std::string key, const std::string& message)
      : Error(ErrorCode::kConfig, message), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

struct MonitoringConfig {
  monitoring::ViolationParams violations;
  monitoring::ContactParams contacts;
  monitoring::MaskParams mask;
  double zone_buffer_m = 0.4;
  double zone_min_dwell_s = 5.0;
  monitoring::Bucket bucket = monitoring::Bucket::kHour;
  std::string start_time = "2021-01-01T00:00:00Z";
  std::string classifier_command;  // empty: labels stay unknown
};

struct PipelineConfig {
  double fps = 7.0;
  int n_skip = 1;
  tracking::TrackerConfig tracking;
  int min_tracklet_len = 4;
  grouping::GroupingParams grouping;
  MonitoringConfig monitoring;
  double eval_iou_min = 0.5;

  // Throws ConfigError naming the first offending key.
  void Validate() const;
  FrameClock clock() const { return FrameClock(fps, n_skip); }
  // Every key as "key = value", sorted; hashed into run manifests.
  std::string Canonical() const;
};

std::vector<std::string> ConfigKeys();
void SetConfigValue(PipelineConfig& cfg, const std::string& key,
                    const std::string& value);
std::string GetConfigValue(const PipelineConfig& cfg, const std::string& key);

// "key = value" lines; "[section]" headers prefix later keys; '#' starts a
// comment. Strings may be double-quoted, lists use [a, b, ...].
void ApplyConfigText(PipelineConfig& cfg, std::istream& in);

// POSSENSE_<SECTION>_<KEY>, e.g. POSSENSE_TRACKING_MAX_AGE.
std::string EnvName(const std::string& key);
using EnvLookup = std::function<const char*(const char*)>;
void ApplyEnvironment(PipelineConfig& cfg, const EnvLookup& lookup);

// Defaults, then the file, then the environment, then "key=value"
// overrides. The result is validated.
PipelineConfig LoadConfig(const std::optional<std::filesystem::path>& file,
                          const std::vector<std::string>& overrides,
                          const EnvLookup& lookup);

}  // namespace possense::cli

#endif  // POSSENSE_CLI_CONFIG_H_
