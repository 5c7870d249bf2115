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

#include "possense/synth/generator.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>

#include "possense/grouping/trajectory_window.h"
#include "possense/model/detection_io.h"
#include "possense/model/errors.h"
#include "possense/model/format.h"

namespace possense::synth {

namespace {

constexpr double kPlantedDistance = 2.134;  // tau_s
constexpr double kPlantedFraction = 0.8;
constexpr double kMinSpacing = 0.4;  // m between neighbours
constexpr double kMaxSpread = 1.2;   // m across the whole line

Eigen::Vector2d LeftNormal(const Eigen::Vector2d& dir) {
  return {-dir.y(), dir.x()};
}

Appearance RandomUnit(Rng& rng) {
  Appearance v(kAppearanceDim);
  for (auto& x : v) x = static_cast<float>(rng.Normal());
  return NormalizeAppearance(v);
}

Appearance Jitter(const Appearance& latent, double sigma, Rng& rng) {
  Appearance v = latent;
  for (auto& x : v) x += static_cast<float>(sigma * rng.Normal());
  return NormalizeAppearance(v);
}

bool Inside(const BBox& b, const ImageSize& img) {
  return b.left >= 0.0 && b.top >= 0.0 && b.right() <= img.width &&
         b.bottom() <= img.height;
}

void CheckPlanted(const std::vector<AgentSpec>& agents,
                  const std::vector<TruthSample>& truth) {
  std::map<int, std::map<int, Eigen::Vector2d>> by_frame;  // frame -> agent
  for (const auto& s : truth) by_frame[s.frame_index][s.agent_id] = s.position;
  std::map<int, std::vector<int>> members;
  for (const auto& a : agents) {
    if (a.group_id >= 0) members[a.group_id].push_back(a.agent_id);
  }
  for (const auto& [g, ids] : members) {
    for (std::size_t x = 0; x < ids.size(); ++x) {
      for (std::size_t y = x + 1; y < ids.size(); ++y) {
        int both = 0, close = 0;
        for (const auto& [f, pos] : by_frame) {
          const auto a = pos.find(ids[x]);
          const auto b = pos.find(ids[y]);
          if (a == pos.end() || b == pos.end()) continue;
          ++both;
          if ((a->second - b->second).norm() <= kPlantedDistance) ++close;
        }
        if (both > 0 && close < kPlantedFraction * both) {
          throw Error(ErrorCode::kInvalidArgument,
                      "scenario: group " + std::to_string(g) +
                          " members " + std::to_string(ids[x]) + " and " +
                          std::to_string(ids[y]) +
                          " are not within 2.134 m for 80% of their time");
        }
      }
    }
  }
}

}  // namespace

std::vector<AgentSpec> ResolveAgents(const Scenario& sc, Rng& rng) {
  std::vector<AgentSpec> out = sc.agents;
  std::map<int, std::size_t> leader;     // group -> index of first member
  std::map<int, double> last_offset;     // group -> offset of latest member
  std::map<int, int> group_size;
  for (const auto& a : out) {
    if (a.group_id >= 0) ++group_size[a.group_id];
  }
  for (std::size_t k = 0; k < out.size(); ++k) {
    AgentSpec& a = out[k];
    if (a.group_id < 0) {
      if (!a.lateral_offset) a.lateral_offset = 0.0;
      continue;
    }
    const auto it = leader.find(a.group_id);
    if (it == leader.end()) {
      leader[a.group_id] = k;
      if (!a.lateral_offset) a.lateral_offset = 0.0;
      last_offset[a.group_id] = *a.lateral_offset;
      continue;
    }
    const AgentSpec& lead = out[it->second];
    if (a.waypoints.empty()) {
      a.waypoints = lead.waypoints;
      a.speed = lead.speed;
      a.speed_profile = lead.speed_profile;
      if (!a.start_time) a.start_time = lead.start_time;
      if (!a.end_time) a.end_time = lead.end_time;
    }
    if (!a.lateral_offset) {
      // Side by side, neighbours at least 0.4 m apart and the whole line
      // within 1.2 m when the member count allows it.
      const double hi = std::max(
          kMinSpacing,
          kMaxSpread / std::max(1, group_size[a.group_id] - 1));
      a.lateral_offset = last_offset[a.group_id] + rng.Uniform(kMinSpacing, hi);
    }
    last_offset[a.group_id] = *a.lateral_offset;
  }
  return out;
}

std::optional<Eigen::Vector2d> AgentPosition(const AgentSpec& a, double t,
                                             double duration_s) {
  const double start = a.start_time.value_or(0.0);
  if (t < start - 1e-12) return std::nullopt;
  const double offset = a.lateral_offset.value_or(0.0);
  if (a.waypoints.size() == 1) {
    if (t > a.end_time.value_or(duration_s) + 1e-12) return std::nullopt;
    return Eigen::Vector2d(a.waypoints[0] + Eigen::Vector2d(offset, 0.0));
  }
  if (a.end_time && t > *a.end_time + 1e-12) return std::nullopt;
  double elapsed = t - start;
  Eigen::Vector2d dir(0.0, 1.0);
  for (std::size_t k = 0; k + 1 < a.waypoints.size(); ++k) {
    const Eigen::Vector2d seg = a.waypoints[k + 1] - a.waypoints[k];
    const double len = seg.norm();
    if (len <= 0.0) continue;
    dir = seg / len;
    const double v = a.speed_profile.empty() ? a.speed : a.speed_profile[k];
    if (v <= 0.0) {
      return Eigen::Vector2d(a.waypoints[k] + offset * LeftNormal(dir));
    }
    const double dur = len / v;
    if (elapsed <= dur) {
      return Eigen::Vector2d(a.waypoints[k] + dir * (v * elapsed) +
                             offset * LeftNormal(dir));
    }
    elapsed -= dur;
  }
  // Path finished: wait at the end only when told to stay.
  if (a.end_time) {
    return Eigen::Vector2d(a.waypoints.back() + offset * LeftNormal(dir));
  }
  return std::nullopt;
}

std::optional<BBox> BodyBox(const mapping::CameraModel& camera,
                            const Eigen::Vector2d& ground, double body_width,
                            double body_height) {
  PixelPoint foot, head;
  try {
    foot = camera.Project({ground.x(), ground.y(), 0.0});
    head = camera.Project({ground.x(), ground.y(), body_height});
  } catch (const Error&) {
    return std::nullopt;
  }
  const double h = foot.v - head.v;
  if (!(h > 0.0)) return std::nullopt;
  const double w = h * body_width / body_height;
  return BBox{foot.u - 0.5 * w, head.v, w, h};
}

GeneratedBundle Generate(const Scenario& sc) {
  sc.Validate();
  Rng rng(sc.seed);
  GeneratedBundle out;
  out.seed = sc.seed;
  std::vector<AgentSpec> agents = ResolveAgents(sc, rng);
  std::sort(agents.begin(), agents.end(),
            [](const AgentSpec& a, const AgentSpec& b) {
              return a.agent_id < b.agent_id;
            });
  std::map<int, Appearance> latent;
  for (const auto& a : agents) latent[a.agent_id] = RandomUnit(rng);

  const ImageSize img = sc.camera.image_size();
  const int frames = static_cast<int>(std::llround(sc.duration_s * sc.fps));
  out.frame_count = frames;
  std::set<int> ever_visible;
  for (int f = 1; f <= frames; ++f) {
    const double t = (f - 1) / sc.fps;
    FrameDetections fd;
    fd.frame_index = f;
    for (const auto& a : agents) {
      const auto pos = AgentPosition(a, t, sc.duration_s);
      if (!pos) continue;
      TruthSample ts{f, t, a.agent_id, a.group_id, *pos, false};
      const auto box = BodyBox(sc.camera, *pos, a.body_width, a.body_height);
      ts.visible = box && Inside(*box, img);
      out.truth.push_back(ts);
      if (!ts.visible) continue;
      ever_visible.insert(a.agent_id);
      out.gt[f].push_back({f, a.agent_id, *box, 1.0});
      ++out.stats.visible_observations;
      if (rng.Bernoulli(sc.noise.dropout_prob)) {
        ++out.stats.dropped;
        continue;
      }
      Detection d;
      d.frame_index = f;
      d.class_label = a.class_label;
      d.bbox = *box;
      if (sc.noise.pixel_sigma > 0.0) {
        const double s = sc.noise.pixel_sigma;
        const double l = box->left + rng.Normal(0.0, s);
        const double tp = box->top + rng.Normal(0.0, s);
        const double r = box->right() + rng.Normal(0.0, s);
        const double b = box->bottom() + rng.Normal(0.0, s);
        d.bbox = {l, tp, std::max(1.0, r - l), std::max(1.0, b - tp)};
      }
      if (sc.appearance.enabled) {
        d.appearance = Jitter(latent[a.agent_id], sc.appearance.jitter_sigma,
                              rng);
      }
      fd.detections.push_back(std::move(d));
    }
    const int spurious = rng.Poisson(sc.noise.fp_rate);
    for (int k = 0; k < spurious; ++k) {
      const double h = rng.Uniform(60.0, 200.0);
      const double w = 0.4 * h;
      Detection d;
      d.frame_index = f;
      d.confidence = 0.5;
      d.bbox = {rng.Uniform(0.0, img.width - w), rng.Uniform(0.0, img.height - h),
                w, h};
      if (sc.appearance.enabled) d.appearance = RandomUnit(rng);
      fd.detections.push_back(std::move(d));
      ++out.stats.false_positives;
    }
    std::stable_sort(fd.detections.begin(), fd.detections.end(),
                     [](const Detection& x, const Detection& y) {
                       return x.bbox.left < y.bbox.left;
                     });
    out.detections.push_back(std::move(fd));
  }
  for (const auto& a : agents) {
    if (!ever_visible.count(a.agent_id)) {
      out.warnings.push_back("agent " + std::to_string(a.agent_id) +
                             " is never fully in view");
    }
  }
  CheckPlanted(agents, out.truth);

  // Grouping truth over the same windows the detector will use.
  TrajectorySet visible;
  std::map<int, int> group_of;
  for (const auto& s : out.truth) {
    group_of[s.agent_id] = s.group_id;
    if (!s.visible) continue;
    TrajectorySample ts;
    ts.track_id = s.agent_id;
    ts.frame_index = s.frame_index;
    ts.time_s = s.t;
    ts.x = s.position.x();
    ts.y = s.position.y();
    visible[s.agent_id].push_back(ts);
  }
  for (const auto& win :
       grouping::BuildWindows(visible, sc.window_s, sc.stride_s)) {
    std::map<int, std::vector<int>> planted;
    grouping::Groups groups;
    for (const int id : win.member_ids()) {
      const int g = group_of[id];
      if (g < 0) {
        groups.push_back({id});
      } else {
        planted[g].push_back(id);
      }
    }
    for (auto& [g, ids] : planted) groups.push_back(ids);
    std::sort(groups.begin(), groups.end());
    out.groups_gt[win.window_id] = std::move(groups);
  }
  return out;
}

std::vector<std::filesystem::path> WriteBundle(
    const GeneratedBundle& bundle, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const std::string header = "# seed=" + std::to_string(bundle.seed) + "\n";
  auto open = [](const std::filesystem::path& p, bool binary) {
    std::ofstream f(p, binary ? std::ios::binary : std::ios::out);
    if (!f) throw Error(ErrorCode::kIo, "cannot write " + p.string());
    return f;
  };
  std::vector<std::filesystem::path> written;

  const auto truth_path = dir / "world_truth.csv";
  {
    auto f = open(truth_path, false);
    f << header << "frame,time_s,agent_id,group_id,x_m,y_m,visible\n";
    for (const auto& s : bundle.truth) {
      f << s.frame_index << ',' << FormatDouble(s.t) << ',' << s.agent_id
        << ',' << s.group_id << ',' << FormatDouble(s.position.x()) << ','
        << FormatDouble(s.position.y()) << ',' << int{s.visible} << '\n';
    }
  }
  written.push_back(truth_path);

  // JSON lines keep the class label, which MOT text cannot carry.
  const auto det_path = dir / "detections.jsonl";
  std::vector<Appearance> sidecar;
  {
    auto f = open(det_path, false);
    f << header;
    WriteDetections(f, bundle.detections, DetectionFormat::kJsonLines);
    for (const auto& d : Flatten(bundle.detections)) {
      if (d.appearance) sidecar.push_back(*d.appearance);
    }
  }
  written.push_back(det_path);

  if (!sidecar.empty()) {
    const auto app_path = dir / "appearance.bin";
    auto f = open(app_path, true);
    WriteAppearanceSidecar(f, sidecar);
    written.push_back(app_path);
  }

  const auto gt_path = dir / "gt.txt";
  {
    auto f = open(gt_path, false);
    f << header;
    evaluation::WriteMot(f, bundle.gt);
  }
  written.push_back(gt_path);

  const auto groups_path = dir / "groups_gt.jsonl";
  {
    auto f = open(groups_path, false);
    for (const auto& [k, groups] : bundle.groups_gt) {
      f << "{\"window\":" << k << ",\"groups\":[";
      for (std::size_t g = 0; g < groups.size(); ++g) {
        if (g > 0) f << ',';
        f << '[';
        for (std::size_t m = 0; m < groups[g].size(); ++m) {
          if (m > 0) f << ',';
          f << groups[g][m];
        }
        f << ']';
      }
      f << "],\"seed\":" << bundle.seed << "}\n";
    }
  }
  written.push_back(groups_path);
  return written;
}

}  // namespace possense::synth
