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

#include "possense/cli/config.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>

#include "possense/model/format.h"

namespace possense::cli {

namespace {

struct Entry {
  std::function<void(PipelineConfig&, const std::string&)> set;
  std::function<std::string(const PipelineConfig&)> get;
};

std::string Unquote(const std::string& raw) {
  const std::string v(Trim(raw));
  if (v.size() >= 2 && v.front() == '"' && v.back() == '"') {
    return v.substr(1, v.size() - 2);
  }
  return v;
}

double AsDouble(const std::string& key, const std::string& raw) {
  try {
    return ParseDouble(Trim(raw), 0);
  } catch (const Error&) {
    throw ConfigError(key, key + ": expected a number, got '" + raw + "'");
  }
}

int AsInt(const std::string& key, const std::string& raw) {
  try {
    return static_cast<int>(ParseInt(Trim(raw), 0));
  } catch (const Error&) {
    throw ConfigError(key, key + ": expected an integer, got '" + raw + "'");
  }
}

bool AsBool(const std::string& key, const std::string& raw) {
  const std::string v = Unquote(raw);
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw ConfigError(key, key + ": expected true or false, got '" + raw + "'");
}

grouping::FeatureVector AsVector4(const std::string& key,
                                  const std::string& raw) {
  std::string v(Trim(raw));
  if (v.size() < 2 || v.front() != '[' || v.back() != ']') {
    throw ConfigError(key, key + ": expected a list [a, b, c, d]");
  }
  v = v.substr(1, v.size() - 2);
  grouping::FeatureVector out{};
  std::stringstream ss(v);
  std::string item;
  int n = 0;
  while (std::getline(ss, item, ',')) {
    if (n >= grouping::kFeatureCount) break;
    out[n++] = AsDouble(key, item);
  }
  if (n != grouping::kFeatureCount || std::getline(ss, item, ',')) {
    throw ConfigError(key, key + ": expected exactly 4 values");
  }
  return out;
}

std::string FormatVector4(const grouping::FeatureVector& v) {
  std::string s = "[";
  for (int k = 0; k < grouping::kFeatureCount; ++k) {
    if (k > 0) s += ", ";
    s += FormatDouble(v[k]);
  }
  return s + "]";
}

template <typename Access>
Entry DoubleEntry(const std::string& key, Access access) {
  return {[key, access](PipelineConfig& c, const std::string& v) {
            access(c) = AsDouble(key, v);
          },
          [access](const PipelineConfig& c) {
            return FormatDouble(access(const_cast<PipelineConfig&>(c)));
          }};
}

template <typename Access>
Entry IntEntry(const std::string& key, Access access) {
  return {[key, access](PipelineConfig& c, const std::string& v) {
            access(c) = AsInt(key, v);
          },
          [access](const PipelineConfig& c) {
            return std::to_string(access(const_cast<PipelineConfig&>(c)));
          }};
}

const std::map<std::string, Entry>& Registry() {
  static const std::map<std::string, Entry> registry = [] {
    std::map<std::string, Entry> r;
    using C = PipelineConfig;
    r["clock.fps"] = DoubleEntry("clock.fps", [](C& c) -> double& { return c.fps; });
    r["clock.n_skip"] = IntEntry("clock.n_skip", [](C& c) -> int& { return c.n_skip; });

    r["tracking.chi2_gate"] = DoubleEntry(
        "tracking.chi2_gate", [](C& c) -> double& { return c.tracking.gates.chi2; });
    r["tracking.appearance_gate"] =
        DoubleEntry("tracking.appearance_gate",
                    [](C& c) -> double& { return c.tracking.gates.appearance; });
    r["tracking.lambda_mix"] = DoubleEntry(
        "tracking.lambda_mix", [](C& c) -> double& { return c.tracking.lambda_mix; });
    r["tracking.iou_min"] = DoubleEntry(
        "tracking.iou_min", [](C& c) -> double& { return c.tracking.iou_min; });
    r["tracking.n_init"] =
        IntEntry("tracking.n_init", [](C& c) -> int& { return c.tracking.n_init; });
    r["tracking.max_age"] =
        IntEntry("tracking.max_age", [](C& c) -> int& { return c.tracking.max_age; });
    r["tracking.gallery_size"] = IntEntry(
        "tracking.gallery_size", [](C& c) -> int& { return c.tracking.gallery_size; });
    r["tracking.min_tracklet_len"] = IntEntry(
        "tracking.min_tracklet_len", [](C& c) -> int& { return c.min_tracklet_len; });
    r["tracking.noise_position"] =
        DoubleEntry("tracking.noise_position",
                    [](C& c) -> double& { return c.tracking.noise.position; });
    r["tracking.noise_velocity"] =
        DoubleEntry("tracking.noise_velocity",
                    [](C& c) -> double& { return c.tracking.noise.velocity; });
    r["tracking.noise_measurement"] = DoubleEntry(
        "tracking.noise_measurement",
        [](C& c) -> double& { return c.tracking.noise.measurement_position; });
    r["tracking.persons_only"] = {
        [](C& c, const std::string& v) {
          c.tracking.persons_only = AsBool("tracking.persons_only", v);
        },
        [](const C& c) {
          return std::string(c.tracking.persons_only ? "true" : "false");
        }};

    r["grouping.window_s"] = DoubleEntry(
        "grouping.window_s", [](C& c) -> double& { return c.grouping.window_s; });
    r["grouping.stride_s"] = DoubleEntry(
        "grouping.stride_s", [](C& c) -> double& { return c.grouping.stride_s; });
    r["grouping.tau_s"] = DoubleEntry(
        "grouping.tau_s", [](C& c) -> double& { return c.grouping.tau_s; });
    r["grouping.tau_v"] = DoubleEntry(
        "grouping.tau_v", [](C& c) -> double& { return c.grouping.tau_v; });
    r["grouping.lambda_loc"] = DoubleEntry(
        "grouping.lambda_loc", [](C& c) -> double& { return c.grouping.lambda_loc; });
    r["grouping.granger_order"] = IntEntry(
        "grouping.granger_order", [](C& c) -> int& { return c.grouping.granger_order; });
    r["grouping.grid_res"] = DoubleEntry(
        "grouping.grid_res", [](C& c) -> double& { return c.grouping.grid_res; });
    r["grouping.grid_pad"] = DoubleEntry(
        "grouping.grid_pad", [](C& c) -> double& { return c.grouping.grid_pad; });
    r["grouping.negative_fraction"] =
        DoubleEntry("grouping.negative_fraction",
                    [](C& c) -> double& { return c.grouping.negative_fraction; });
    r["grouping.reference_near_m"] =
        DoubleEntry("grouping.reference_near_m",
                    [](C& c) -> double& { return c.grouping.reference_near_m; });
    r["grouping.reference_speed"] =
        DoubleEntry("grouping.reference_speed",
                    [](C& c) -> double& { return c.grouping.reference_speed; });
    r["grouping.reference_fps"] =
        DoubleEntry("grouping.reference_fps",
                    [](C& c) -> double& { return c.grouping.reference_fps; });
    r["grouping.exact_limit"] = IntEntry(
        "grouping.exact_limit", [](C& c) -> int& { return c.grouping.exact_limit; });
    r["grouping.alpha"] = {
        [](C& c, const std::string& v) {
          c.grouping.weights.alpha = AsVector4("grouping.alpha", v);
        },
        [](const C& c) { return FormatVector4(c.grouping.weights.alpha); }};
    r["grouping.beta"] = {
        [](C& c, const std::string& v) {
          c.grouping.weights.beta = AsVector4("grouping.beta", v);
        },
        [](const C& c) { return FormatVector4(c.grouping.weights.beta); }};
    r["grouping.normalization"] = {
        [](C& c, const std::string& v) {
          try {
            c.grouping.normalization = grouping::ParseNormalization(Unquote(v));
          } catch (const Error& e) {
            throw ConfigError("grouping.normalization", e.what());
          }
        },
        [](const C& c) {
          return grouping::NormalizationName(c.grouping.normalization);
        }};

    r["monitoring.threshold_m"] =
        DoubleEntry("monitoring.threshold_m", [](C& c) -> double& {
          return c.monitoring.violations.threshold_m;
        });
    r["monitoring.min_duration_s"] =
        DoubleEntry("monitoring.min_duration_s", [](C& c) -> double& {
          return c.monitoring.violations.min_duration_s;
        });
    r["monitoring.max_gap_s"] =
        DoubleEntry("monitoring.max_gap_s", [](C& c) -> double& {
          return c.monitoring.violations.max_gap_s;
        });
    r["monitoring.zone_buffer_m"] = DoubleEntry(
        "monitoring.zone_buffer_m",
        [](C& c) -> double& { return c.monitoring.zone_buffer_m; });
    r["monitoring.zone_min_dwell_s"] = DoubleEntry(
        "monitoring.zone_min_dwell_s",
        [](C& c) -> double& { return c.monitoring.zone_min_dwell_s; });
    r["monitoring.aspect_ratio_max_sit"] =
        DoubleEntry("monitoring.aspect_ratio_max_sit", [](C& c) -> double& {
          return c.monitoring.contacts.aspect_ratio_max_sit;
        });
    r["monitoring.min_px_height"] =
        DoubleEntry("monitoring.min_px_height", [](C& c) -> double& {
          return c.monitoring.mask.min_px_height;
        });
    r["monitoring.distance_mode"] = {
        [](C& c, const std::string& v) {
          try {
            c.monitoring.violations.mode = monitoring::ParseDistanceMode(Unquote(v));
          } catch (const Error& e) {
            throw ConfigError("monitoring.distance_mode", e.what());
          }
        },
        [](const C& c) {
          return monitoring::DistanceModeName(c.monitoring.violations.mode);
        }};
    r["monitoring.bucket"] = {
        [](C& c, const std::string& v) {
          try {
            c.monitoring.bucket = monitoring::ParseBucket(Unquote(v));
          } catch (const Error& e) {
            throw ConfigError("monitoring.bucket", e.what());
          }
        },
        [](const C& c) { return monitoring::BucketName(c.monitoring.bucket); }};
    r["monitoring.start_time"] = {
        [](C& c, const std::string& v) {
          const std::string t = Unquote(v);
          try {
            (void)monitoring::ParseIsoTime(t);
          } catch (const Error& e) {
            throw ConfigError("monitoring.start_time", e.what());
          }
          c.monitoring.start_time = t;
        },
        [](const C& c) { return c.monitoring.start_time; }};
    r["monitoring.classifier_command"] = {
        [](C& c, const std::string& v) {
          c.monitoring.classifier_command = Unquote(v);
        },
        [](const C& c) { return c.monitoring.classifier_command; }};

    r["evaluation.iou_min"] = DoubleEntry(
        "evaluation.iou_min", [](C& c) -> double& { return c.eval_iou_min; });
    return r;
  }();
  return registry;
}

const Entry& Lookup(const std::string& key) {
  const auto& reg = Registry();
  const auto it = reg.find(key);
  if (it == reg.end()) {
    throw ConfigError(key, "unknown config key '" + key + "'");
  }
  return it->second;
}

// Leading "section.key" of a validation message, if it is a known key.
std::string KeyOf(const std::string& message) {
  const auto end = message.find_first_of(" :");
  const std::string head = message.substr(0, end);
  return Registry().count(head) ? head : "";
}

}  // namespace

std::vector<std::string> ConfigKeys() {
  std::vector<std::string> keys;
  for (const auto& [k, e] : Registry()) keys.push_back(k);
  return keys;
}

void SetConfigValue(PipelineConfig& cfg, const std::string& key,
                    const std::string& value) {
  Lookup(key).set(cfg, value);
}

std::string GetConfigValue(const PipelineConfig& cfg, const std::string& key) {
  return Lookup(key).get(cfg);
}

void PipelineConfig::Validate() const {
  auto wrap = [](auto&& fn) {
    try {
      fn();
    } catch (const ConfigError&) {
      throw;
    } catch (const Error& e) {
      throw ConfigError(KeyOf(e.what()), e.what());
    }
  };
  wrap([&] { (void)FrameClock(fps, n_skip); });
  wrap([&] { tracking.Validate(); });
  if (min_tracklet_len < 1) {
    throw ConfigError("tracking.min_tracklet_len",
                      "tracking.min_tracklet_len must be >= 1");
  }
  wrap([&] { grouping.Validate(); });
  wrap([&] { monitoring.violations.Validate(); });
  wrap([&] { monitoring.contacts.Validate(); });
  wrap([&] { monitoring.mask.Validate(); });
  if (!(monitoring.zone_buffer_m >= 0.0)) {
    throw ConfigError("monitoring.zone_buffer_m",
                      "monitoring.zone_buffer_m must be >= 0");
  }
  if (!(monitoring.zone_min_dwell_s >= 0.0)) {
    throw ConfigError("monitoring.zone_min_dwell_s",
                      "monitoring.zone_min_dwell_s must be >= 0");
  }
  if (!(eval_iou_min > 0.0 && eval_iou_min <= 1.0)) {
    throw ConfigError("evaluation.iou_min",
                      "evaluation.iou_min must be in (0, 1]");
  }
}

std::string PipelineConfig::Canonical() const {
  std::string out;
  for (const auto& [k, e] : Registry()) out += k + " = " + e.get(*this) + "\n";
  return out;
}

void ApplyConfigText(PipelineConfig& cfg, std::istream& in) {
  std::string line;
  std::string section;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    // Strip comments outside quotes.
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '"') quoted = !quoted;
      if (line[i] == '#' && !quoted) {
        line.resize(i);
        break;
      }
    }
    const std::string t(Trim(line));
    if (t.empty()) continue;
    if (t.front() == '[' && t.back() == ']' && t.find('=') == std::string::npos) {
      section = std::string(Trim(t.substr(1, t.size() - 2)));
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("", "config line " + std::to_string(line_no) +
                                ": expected key = value");
    }
    std::string key(Trim(t.substr(0, eq)));
    if (!section.empty()) key = section + "." + key;
    SetConfigValue(cfg, key, t.substr(eq + 1));
  }
}

std::string EnvName(const std::string& key) {
  std::string s = "POSSENSE_";
  for (char ch : key) {
    s += ch == '.' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  }
  return s;
}

void ApplyEnvironment(PipelineConfig& cfg, const EnvLookup& lookup) {
  for (const auto& [key, entry] : Registry()) {
    const std::string name = EnvName(key);
    if (const char* v = lookup(name.c_str())) entry.set(cfg, v);
  }
}

PipelineConfig LoadConfig(const std::optional<std::filesystem::path>& file,
                          const std::vector<std::string>& overrides,
                          const EnvLookup& lookup) {
  PipelineConfig cfg;
  if (file) {
    std::ifstream in(*file);
    if (!in) throw Error(ErrorCode::kIo, "cannot read " + file->string());
    ApplyConfigText(cfg, in);
  }
  if (lookup) ApplyEnvironment(cfg, lookup);
  for (const auto& o : overrides) {
    const auto eq = o.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(o, "override '" + o + "' must be key=value");
    }
    SetConfigValue(cfg, std::string(Trim(o.substr(0, eq))), o.substr(eq + 1));
  }
  cfg.Validate();
  return cfg;
}

}  // namespace possense::cli
